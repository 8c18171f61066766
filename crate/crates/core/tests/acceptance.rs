//! End-to-end acceptance run: one PASS/FAIL line per criterion, each timed
//! against its budget.
//!
//! Two sub-claims cannot hold for these matrices and are reported as FAIL:
//! `|G_2| = 4` (R has eigenvalues z and conj z, so `<R>` is cyclic of
//! order 8) and `|H'_2| = 4` (the single generator `g'_1` squares to `+I`,
//! and `-I` only arises from commutators once there are two generators).
//! They are listed in `KNOWN` and do not affect the exit status unless
//! `ACCEPTANCE_STRICT=1` is set.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use braidrep::chars::{self, CharTable, Irrep};
use braidrep::esgroup::{self, EsGroup, Nu, Phi};
use braidrep::invariants::{self, curated_links};
use braidrep::rep::{self, mats, ClauseStatus, RepKind, Representation};
use braidrep::{BraidWord, CycloNum, ExactMatrix, Letter};

const KNOWN: &[&str] = &["|G_2| = 4", "|H'_2| = 2^2"];

struct Check {
    label: String,
    ok: bool,
}

fn check(label: impl Into<String>, ok: bool) -> Check {
    Check {
        label: label.into(),
        ok,
    }
}

struct Outcome {
    failed_known: Vec<String>,
    failed_other: Vec<String>,
}

fn run(id: u8, title: &str, budget: Duration, body: impl FnOnce() -> Vec<Check>) -> Outcome {
    let start = Instant::now();
    let checks = body();
    let elapsed = start.elapsed();
    let mut failed_known = Vec::new();
    let mut failed_other = Vec::new();
    for c in &checks {
        if !c.ok {
            if KNOWN.contains(&c.label.as_str()) {
                failed_known.push(c.label.clone());
            } else {
                failed_other.push(c.label.clone());
            }
        }
    }
    let in_time = elapsed <= budget;
    if !in_time {
        failed_other.push(format!("took {elapsed:.2?}, budget {budget:.2?}"));
    }
    let verdict = if failed_known.is_empty() && failed_other.is_empty() {
        "PASS"
    } else {
        "FAIL"
    };
    println!(
        "{verdict} criterion {id:>2}: {title} ({} checks, {elapsed:.2?} / {budget:.0?})",
        checks.len()
    );
    for f in failed_known.iter().chain(&failed_other) {
        println!("       failed: {f}");
    }
    Outcome {
        failed_known,
        failed_other,
    }
}

fn random_word(rng: &mut StdRng, n: usize, max_len: usize) -> BraidWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..n), rng.gen_bool(0.5)))
        .collect();
    BraidWord::new(n, letters).expect("indices in range")
}

fn c1() -> Vec<Check> {
    vec![
        check("YBE for R", rep::satisfies_ybe(&mats::r())),
        check("YBE for R'", rep::satisfies_ybe(&mats::r_prime())),
    ]
}

fn c2() -> Vec<Check> {
    let mut out = Vec::new();
    for kind in RepKind::ALL {
        for n in 2..=8 {
            let Ok(rep) = Representation::new(kind, n) else {
                continue;
            };
            let failures = rep.braid_relation_failures().expect("generators build");
            out.push(check(
                format!("{kind:?} n={n} {failures:?}"),
                failures.is_empty(),
            ));
        }
    }
    out
}

fn c3() -> Vec<Check> {
    let mut out = Vec::new();
    let mut seen_pass = HashSet::new();
    for n in 2..=6 {
        let report = rep::verify_lemma22(n).expect("n >= 2");
        for c in &report.clauses {
            if c.status == ClauseStatus::Pass {
                seen_pass.insert(c.clause);
            }
            out.push(check(
                format!("n={n} clause ({}) {:?}", c.clause, c.status),
                c.status != ClauseStatus::Fail,
            ));
        }
    }
    for clause in 'a'..='k' {
        out.push(check(
            format!("clause ({clause}) verified at some n"),
            seen_pass.contains(&clause),
        ));
    }
    out
}

fn c4() -> Vec<Check> {
    let mut out = Vec::new();
    for m in 1..=13 {
        for nu in [Nu::Minus, Nu::Plus] {
            let g = EsGroup::new(m, nu).unwrap();
            let order = g.closure_order().unwrap() as u128;
            out.push(check(
                format!("|E_{m}^{nu}| = 2^{}", m + 1),
                order == 1u128 << (m + 1),
            ));
            let brute: HashSet<_> = g.center().unwrap().into_iter().collect();
            let closed: HashSet<_> = g.center_closed_form().into_iter().collect();
            out.push(check(format!("Z(E_{m}^{nu}) closed form"), brute == closed));
            if m % 2 == 1 {
                out.push(check(
                    format!("Z(E_{m}^{nu}) structure"),
                    g.center_structure().unwrap() == g.center_structure_closed_form().unwrap(),
                ));
            }
        }
    }
    out
}

fn c5() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let phi = Phi::new(n, RepKind::Pi).unwrap();
        let g = *phi.group();
        out.push(check(
            format!("phi_{n} has 2^{n} distinct images"),
            phi.distinct_images().unwrap() == 1 << n,
        ));
        out.push(check(
            format!("phi_{n}(-1) = -I"),
            phi.image(&g.minus_one()).as_scalar() == Some(-CycloNum::one()),
        ));
        if n % 2 == 0 {
            let z = phi.image(&g.z().unwrap());
            let diag = phi.z_in_diagonal_basis().unwrap();
            out.push(check(
                format!("phi_{n}(z) has trace 0 and is diagonal after P_{n}"),
                z.trace().is_zero() && diag.is_diagonal() && diag.trace().is_zero(),
            ));
        }
    }
    out
}

fn c6() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let h = esgroup::enumerate_pure_image(RepKind::Pi, n).unwrap();
        out.push(check(format!("|H_{n}| = 2^{n}"), h.len() == 1 << n));
    }
    for n in 3..=5 {
        let g = esgroup::enumerate_full_image(RepKind::Pi, n).unwrap();
        let fact: usize = (1..=n).product();
        out.push(check(format!("|G_{n}| = {n}!*2^{n}"), g.order == fact << n));
        out.push(check(
            format!("G_{n} -> S_{n} onto"),
            g.quotient_order == fact,
        ));
        out.push(check(
            format!("G_{n} permutation well defined"),
            g.permutation_consistent,
        ));
        out.push(check(
            format!("ker(G_{n} -> S_{n}) = H_{n}"),
            g.kernel_is_pure_image,
        ));
    }
    let g2 = esgroup::enumerate_full_image(RepKind::Pi, 2).unwrap();
    out.push(check("|G_2| = 4", g2.order == 4));
    out.push(check("G_2 -> S_2 onto", g2.quotient_order == 2));
    out
}

fn c7() -> Vec<Check> {
    let mut out = Vec::new();
    for m in 1..=9 {
        for nu in [Nu::Minus, Nu::Plus] {
            let t = CharTable::new(EsGroup::new(m, nu).unwrap()).unwrap();
            out.push(check(
                format!("E_{m}^{nu} rows = classes"),
                t.irreps().len() == t.classes().len(),
            ));
            out.push(check(
                format!("E_{m}^{nu} row orthogonality"),
                t.row_orthogonality().unwrap(),
            ));
            out.push(check(
                format!("E_{m}^{nu} column orthogonality"),
                t.column_orthogonality().unwrap(),
            ));
            if m % 2 == 0 {
                let k = m / 2;
                let dims = t.dims();
                let big = dims[t.row_of(Irrep::Rho1).unwrap()] as u128;
                let linear = dims.iter().filter(|&&d| d == 1).count() as u128;
                out.push(check(
                    format!("E_{m}^{nu} class equation"),
                    big == 1 << k && (1u128 << (2 * k + 1)) == linear + big * big,
                ));
            }
        }
    }
    for k in 1..=5 {
        out.push(check(
            format!("Res V1 = W1 + W2, k={k}"),
            chars::restriction_check(k).unwrap(),
        ));
    }
    out
}

fn c8() -> Vec<Check> {
    let mut out = Vec::new();
    for n in [3usize, 5, 7, 9] {
        let k = (n - 1) / 2;
        let d = chars::decompose_pi(n).unwrap();
        out.push(check(
            format!("pi_{n}: V1 x 2^{}", k + 1),
            d.count_of(Irrep::Rho1) == 1 << (k + 1) && d.multiplicities.len() == 1,
        ));
        out.push(check(
            format!("pi_{n}: dimension 2^{n}"),
            d.total_dim == d.expected_dim,
        ));
    }
    for n in [4usize, 6, 8] {
        let k = n / 2;
        let d = chars::decompose_pi(n).unwrap();
        out.push(check(
            format!("pi_{n}: W1, W2 x 2^{k}"),
            d.count_of(Irrep::Lambda1) == 1 << k
                && d.count_of(Irrep::Lambda2) == 1 << k
                && d.multiplicities.len() == 2,
        ));
        out.push(check(
            format!("pi_{n}: dimension 2^{n}"),
            d.total_dim == d.expected_dim,
        ));
    }
    out
}

fn c9() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 3..=5 {
        let r = invariants::verify_tl_relations(n).unwrap();
        out.push(check(format!("TL1-TL3 for R' at n={n}"), r.passed()));
    }
    out.push(check("TL1 fails for R", !invariants::tl1_holds_for_r()));
    out
}

fn c10() -> Vec<Check> {
    let mut out = Vec::new();
    for n in 2..=8 {
        let h = esgroup::enumerate_pure_image(RepKind::PiPrime, n).unwrap();
        out.push(check(format!("|H'_{n}| = 2^{n}"), h.len() == 1 << n));
        let pattern = esgroup::relation_pattern(RepKind::PiPrime, n).unwrap();
        out.push(check(
            format!("H'_{n} generators follow nu = +1"),
            pattern.matches(Nu::Plus),
        ));
    }
    out
}

fn c11() -> Vec<Check> {
    let mut out = Vec::new();
    for link in curated_links() {
        assert!(link.word.len() <= 12);
        let oracle = invariants::kauffman_oracle(&link.word).unwrap();
        let j4 = invariants::jones4(&link.word).unwrap();
        out.push(check(
            format!("J4 = oracle for {}", link.name),
            j4 == oracle,
        ));
        let arf = invariants::arf_from_j4(&j4, link.word.closure_components());
        out.push(check(
            format!("Arf trichotomy for {}", link.name),
            arf.is_ok_and(|a| a.value == link.arf),
        ));
    }
    let frozen = [
        ("s1", 2, Some(0)),
        ("s1 s1 s1", 2, Some(1)),
        ("s1 s2^-1 s1 s2^-1", 3, Some(1)),
        ("s1 s1", 2, None),
    ];
    for (text, n, expected) in frozen {
        let w = BraidWord::parse(text, n).unwrap();
        out.push(check(
            format!("Arf({text}) = {expected:?}"),
            invariants::arf(&w).unwrap().value == expected,
        ));
    }
    let mut rng = StdRng::seed_from_u64(0x4a34);
    let sqrt2 = CycloNum::sqrt2();
    let mut relation_ok = 0;
    for _ in 0..200 {
        let n = rng.gen_range(2..=6);
        let w = random_word(&mut rng, n, 10);
        let j4 = invariants::kauffman_oracle(&w).unwrap();
        let (ni, e) = (n as i64, w.exponent_sum());
        let mut ok = true;
        for alpha in [1i64, -1] {
            let sign = if (ni - 1 + e).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            let a = if alpha == -1 && (ni - e).rem_euclid(2) == 1 {
                -1
            } else {
                1
            };
            let rhs = CycloNum::from_integer(sign * a) * &sqrt2 * &j4;
            ok &= invariants::t_r(&w, alpha).unwrap() == rhs;
        }
        relation_ok += usize::from(ok);
    }
    out.push(check(
        format!("T_R-J4 relation on {relation_ok}/200 random words"),
        relation_ok == 200,
    ));
    out
}

fn c12() -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x12);
    for link in curated_links() {
        let j4 = invariants::jones4(&link.word).unwrap();
        let n = link.word.strands();
        let mut conj_ok = true;
        for _ in 0..100 {
            let u = random_word(&mut rng, n, 4);
            let w = link.word.conjugated_by(&u).unwrap();
            conj_ok &= invariants::jones4(&w).unwrap() == j4;
        }
        out.push(check(
            format!("conjugation invariance for {}", link.name),
            conj_ok,
        ));
        let pos = invariants::jones4(&link.word.stabilized(false)).unwrap();
        let neg = invariants::jones4(&link.word.stabilized(true)).unwrap();
        out.push(check(
            format!("positive stabilization for {}", link.name),
            pos == j4,
        ));
        out.push(check(
            format!("negative stabilization for {}", link.name),
            neg == j4,
        ));
    }
    out
}

fn main() -> ExitCode {
    // Touch the dense type so an accidental API break shows up here first.
    let _ = ExactMatrix::identity(1);
    let secs = Duration::from_secs;
    let outcomes = [
        run(1, "YBE for R and R'", Duration::from_millis(1), c1),
        run(2, "braid relations, n <= 8", secs(10), c2),
        run(3, "matrix identities (a)-(k), n <= 6", secs(5), c3),
        run(4, "E_m^nu orders and centers, m <= 13", secs(10), c4),
        run(
            5,
            "phi injective, phi(-1) = -I, tr phi(z) = 0",
            secs(30),
            c5,
        ),
        run(6, "orders of H_n and G_n", secs(300), c6),
        run(
            7,
            "character tables, orthogonality, restriction",
            secs(60),
            c7,
        ),
        run(8, "decomposition of pi_n", secs(60), c8),
        run(9, "Temperley-Lieb relations for R'", secs(1), c9),
        run(10, "renormalized pure image H'_n", secs(30), c10),
        run(11, "J4 vs state sum, T_R relation, Arf", secs(120), c11),
        run(
            12,
            "conjugation and stabilization invariance",
            secs(60),
            c12,
        ),
    ];
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    let other: usize = outcomes.iter().map(|o| o.failed_other.len()).sum();
    let known: usize = outcomes.iter().map(|o| o.failed_known.len()).sum();
    println!("{other} unexpected failures, {known} known-unattainable failures");
    if other > 0 || (strict && known > 0) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
