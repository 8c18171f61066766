//! Link invariants of braid closures: the enhanced trace `T_R`, the Jones
//! polynomial at `t = i` and the Arf invariant it encodes, plus an
//! independent Kauffman-bracket evaluation used to cross-check them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::braid::{BraidError, BraidWord};
use crate::cyclo::CycloNum;
use crate::linalg::ExactMatrix;
use crate::rep::{mats, RepError, RepKind, Representation};

/// Largest crossing count accepted by the state-sum oracle.
pub const ORACLE_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvError {
    #[error("J4 depends on alpha: {plus} for +1, {minus} for -1")]
    AlphaDependent { plus: String, minus: String },
    #[error("J4 = {j4} is neither 0 nor ±(√2)^{exp}")]
    NotTrichotomous { j4: String, exp: i64 },
    #[error("word has {len} crossings; the state sum is capped at {cap}")]
    TooManyCrossings { len: usize, cap: usize },
    #[error("state sum left odd powers of the 16th root of unity")]
    OddPowers,
    #[error("alpha must be 1 or -1, got {0}")]
    BadAlpha(i64),
    #[error("the Temperley-Lieb relations need n >= 3, got {0}")]
    TooFewStrands(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Braid(#[from] BraidError),
}

fn minus_one_pow(k: i64) -> CycloNum {
    CycloNum::from_integer(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `Trace(pi_n(w))`.
pub fn trace_pi(w: &BraidWord) -> Result<CycloNum, InvError> {
    let rep = Representation::new(RepKind::Pi, w.strands())?;
    Ok(rep.evaluate(w)?.trace())
}

/// `Trace(rho1_hat(w))`; for even `n` the model on `n + 1` strands is
/// restricted to `s_1..s_{n-1}`.
pub fn trace_rho_hat(w: &BraidWord) -> Result<CycloNum, InvError> {
    let n = w.strands();
    let model = if n % 2 == 1 { n } else { n + 1 };
    let rep = Representation::new(RepKind::Rho1Hat, model)?;
    Ok(rep.evaluate_letters(w.letters())?.trace())
}

/// `alpha^{n-e}`
fn alpha_phase(n: i64, e: i64, alpha: i64) -> Result<CycloNum, InvError> {
    match alpha {
        1 => Ok(CycloNum::one()),
        -1 => Ok(minus_one_pow(n - e)),
        other => Err(InvError::BadAlpha(other)),
    }
}

fn t_r_from_trace(n: i64, e: i64, alpha: i64, tr: &CycloNum) -> Result<CycloNum, InvError> {
    Ok(alpha_phase(n, e, alpha)? * CycloNum::sqrt2_pow(-n) * tr)
}

/// `T_R(w, alpha) = alpha^{n-e} (√2)^{-n} Trace(pi_n(w))`.
pub fn t_r(w: &BraidWord, alpha: i64) -> Result<CycloNum, InvError> {
    let tr = trace_pi(w)?;
    t_r_from_trace(w.strands() as i64, w.exponent_sum(), alpha, &tr)
}

/// Recovers `J4` from `T_R(w, alpha)` by inverting the relation
/// `T_R = (-1)^{n-1+e} alpha^{n-e} √2 J4`.
pub fn jones4_from_t_r(w: &BraidWord, alpha: i64, t: &CycloNum) -> Result<CycloNum, InvError> {
    let n = w.strands() as i64;
    let e = w.exponent_sum();
    let phase = minus_one_pow(n - 1 + e) * alpha_phase(n, e, alpha)?;
    Ok(phase * CycloNum::inv_sqrt2() * t)
}

/// Both `T_R` values and the `J4` they determine.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrValues {
    pub t_r_plus: CycloNum,
    pub t_r_minus: CycloNum,
    pub j4: CycloNum,
}

pub fn t_r_values(w: &BraidWord) -> Result<TrValues, InvError> {
    let tr = trace_pi(w)?;
    let (n, e) = (w.strands() as i64, w.exponent_sum());
    let t_r_plus = t_r_from_trace(n, e, 1, &tr)?;
    let t_r_minus = t_r_from_trace(n, e, -1, &tr)?;
    let plus = jones4_from_t_r(w, 1, &t_r_plus)?;
    let minus = jones4_from_t_r(w, -1, &t_r_minus)?;
    if plus != minus {
        return Err(InvError::AlphaDependent {
            plus: plus.to_string(),
            minus: minus.to_string(),
        });
    }
    Ok(TrValues {
        t_r_plus,
        t_r_minus,
        j4: plus,
    })
}

/// Jones polynomial of the closure at `t = i`, via `T_R`.
pub fn jones4(w: &BraidWord) -> Result<CycloNum, InvError> {
    Ok(t_r_values(w)?.j4)
}

/// `J4` from the Jones-representation trace formula, taking the branch
/// `(-1)^{1/4} = z` and `Trace(rho_4(w)) = (-conj z)^e Trace(rho1_hat(w))`.
pub fn jones4_direct(w: &BraidWord) -> Result<CycloNum, InvError> {
    let n = w.strands() as i64;
    let e = w.exponent_sum();
    let phase = (-CycloNum::zeta().conj())
        .powi(e)
        .expect("root of unity is invertible");
    let tr_rho4 = phase * trace_rho_hat(w)?;
    let scale = if n % 2 == 0 {
        CycloNum::inv_sqrt2()
    } else {
        CycloNum::one()
    };
    Ok(minus_one_pow(n - 1) * CycloNum::zeta_pow(e) * scale * tr_rho4)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arf {
    pub defined: bool,
    pub value: Option<u8>,
}

/// Arf invariant from `J4`: `0` means undefined, `+(√2)^{c-1}` gives 0 and
/// `-(√2)^{c-1}` gives 1.
pub fn arf_from_j4(j4: &CycloNum, components: usize) -> Result<Arf, InvError> {
    if j4.is_zero() {
        return Ok(Arf {
            defined: false,
            value: None,
        });
    }
    let exp = components as i64 - 1;
    let base = CycloNum::sqrt2_pow(exp);
    if *j4 == base {
        Ok(Arf {
            defined: true,
            value: Some(0),
        })
    } else if *j4 == -base {
        Ok(Arf {
            defined: true,
            value: Some(1),
        })
    } else {
        Err(InvError::NotTrichotomous {
            j4: j4.to_string(),
            exp,
        })
    }
}

pub fn arf(w: &BraidWord) -> Result<Arf, InvError> {
    arf_from_j4(&jones4(w)?, w.closure_components())
}

/// Everything computed for one braid closure.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantResult {
    pub word: String,
    pub strands: usize,
    pub e: i64,
    pub c: usize,
    pub t_r_plus: String,
    pub t_r_minus: String,
    pub j4: String,
    pub arf: Arf,
    #[serde(skip)]
    pub j4_exact: CycloNum,
}

pub fn evaluate(w: &BraidWord) -> Result<InvariantResult, InvError> {
    let v = t_r_values(w)?;
    let c = w.closure_components();
    Ok(InvariantResult {
        word: w.to_string(),
        strands: w.strands(),
        e: w.exponent_sum(),
        c,
        t_r_plus: v.t_r_plus.to_string(),
        t_r_minus: v.t_r_minus.to_string(),
        j4: v.j4.to_string(),
        arf: arf_from_j4(&v.j4, c)?,
        j4_exact: v.j4,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TlCheck {
    pub relation: &'static str,
    pub site: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TlReport {
    pub n: usize,
    pub checks: Vec<TlCheck>,
}

impl TlReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `(B + 1)(B - q) = 0`.
pub fn tl1_holds(b: &ExactMatrix, q: &CycloNum) -> bool {
    let id = ExactMatrix::identity(b.dim());
    (&(b + &id) * &(b - &id.scale(q))).is_zero()
}

/// TL1-TL3 at `q = i` for the images `A_i = pi'_n(sigma_i)` at every site.
pub fn verify_tl_relations(n: usize) -> Result<TlReport, InvError> {
    if n < 3 {
        return Err(InvError::TooFewStrands(n));
    }
    let rep = Representation::new(RepKind::PiPrime, n)?;
    let q = CycloNum::i();
    let id = ExactMatrix::identity(rep.dim());
    let mut checks = Vec::new();
    for i in 1..n {
        checks.push(TlCheck {
            relation: "TL1",
            site: i,
            passed: tl1_holds(rep.generator(i, false)?, &q),
        });
    }
    for i in 1..n - 1 {
        let a = rep.generator(i, false)?;
        let b = rep.generator(i + 1, false)?;
        let ab = a * b;
        let tl2 = &(&(&(&(&ab * a) + &ab) + &(b * a)) + a) + &(b + &id);
        checks.push(TlCheck {
            relation: "TL2",
            site: i,
            passed: tl2.is_zero(),
        });
        let diff = a - b;
        checks.push(TlCheck {
            relation: "TL3",
            site: i,
            passed: &diff * &diff == id.scale(&q),
        });
    }
    Ok(TlReport { n, checks })
}

/// TL1 at `q = i` for the unnormalized `R`, which should fail.
pub fn tl1_holds_for_r() -> bool {
    tl1_holds(&mats::r(), &CycloNum::i())
}

/// Integer Laurent polynomial in one variable.
pub type Laurent = BTreeMap<i64, i128>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    fn roots(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Jones polynomial of the closure as a Laurent polynomial in `A` with
/// `t = A^{-4}`: the Kauffman bracket over all smoothings, loop value
/// `-A^2 - A^{-2}`, normalized by `(-A^3)^{-writhe}`.
pub fn jones_in_a(w: &BraidWord) -> Result<Laurent, InvError> {
    let (n, l) = (w.strands(), w.len());
    if l > ORACLE_CAP {
        return Err(InvError::TooManyCrossings {
            len: l,
            cap: ORACLE_CAP,
        });
    }
    // (A-count minus B-count, loops) -> number of states
    let mut tally: BTreeMap<(i64, usize), i128> = BTreeMap::new();
    if l == 0 {
        tally.insert((0, n), 1);
    }
    let node = |t: usize, p: usize| (t % l) * n + p;
    for mask in 0..(if l == 0 { 0u64 } else { 1u64 << l }) {
        let mut uf = UnionFind::new(l * n);
        for (t, letter) in w.letters().iter().enumerate() {
            let i = letter.index - 1;
            for p in (0..n).filter(|&p| p != i && p != i + 1) {
                uf.union(node(t, p), node(t + 1, p));
            }
            let a_smoothing = mask >> t & 1 == 1;
            if a_smoothing != letter.inverse {
                uf.union(node(t, i), node(t + 1, i));
                uf.union(node(t, i + 1), node(t + 1, i + 1));
            } else {
                uf.union(node(t, i), node(t, i + 1));
                uf.union(node(t + 1, i), node(t + 1, i + 1));
            }
        }
        let a = mask.count_ones() as i64;
        *tally.entry((2 * a - l as i64, uf.roots())).or_default() += 1;
    }
    let delta: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
    let mut bracket = Laurent::new();
    for ((shift, loops), count) in tally {
        let mut term: Laurent = [(shift, count)].into_iter().collect();
        for _ in 1..loops {
            term = laurent_mul(&term, &delta);
        }
        for (e, c) in term {
            *bracket.entry(e).or_default() += c;
        }
    }
    let writhe = w.exponent_sum();
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    let norm: Laurent = [(-3 * writhe, sign)].into_iter().collect();
    let mut out = laurent_mul(&bracket, &norm);
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// Jones polynomial of the closure at `t = i`, by the state sum alone.
///
/// `A = y^{-1}` with `y` a primitive 16th root of unity (`y^4 = i`) is
/// handled as arithmetic modulo `y^8 + 1`; the even part is then read in
/// `Q(z8)` through `y^2 = z`.
pub fn kauffman_oracle(w: &BraidWord) -> Result<CycloNum, InvError> {
    let poly = jones_in_a(w)?;
    let mut y = [0i128; 8];
    for (e, c) in poly {
        let k = (-e).rem_euclid(16) as usize;
        if k < 8 {
            y[k] += c;
        } else {
            y[k - 8] -= c;
        }
    }
    if y.iter().skip(1).step_by(2).any(|&c| c != 0) {
        return Err(InvError::OddPowers);
    }
    let coeffs =
        [y[0], y[2], y[4], y[6]].map(|c| i64::try_from(c).expect("bracket coefficients are small"));
    Ok(CycloNum::from_int_coeffs(coeffs))
}

/// A named braid closure with its Arf invariant as determined by the
/// state-sum oracle (`None` = undefined).
#[derive(Debug, Clone)]
pub struct CuratedLink {
    pub name: &'static str,
    pub word: BraidWord,
    pub arf: Option<u8>,
}

/// Small links used for cross-checks, all at most 12 crossings.
pub fn curated_links() -> Vec<CuratedLink> {
    let table: [(&str, &str, usize, Option<u8>); 16] = [
        ("unknot", "s1", 2, Some(0)),
        ("unknot (negative kink)", "s1^-1", 2, Some(0)),
        ("unknot (3 strands)", "s1 s2", 3, Some(0)),
        ("2-component unlink", "", 2, Some(1)),
        ("3-component unlink", "", 3, Some(0)),
        ("Hopf link", "s1 s1", 2, None),
        ("Hopf link (negative)", "s1^-1 s1^-1", 2, None),
        ("right-handed trefoil", "s1 s1 s1", 2, Some(1)),
        ("left-handed trefoil", "s1^-1 s1^-1 s1^-1", 2, Some(1)),
        ("trefoil (3 strands)", "s1 s2 s1 s2", 3, Some(1)),
        ("figure-eight", "s1 s2^-1 s1 s2^-1", 3, Some(1)),
        ("(2,4) torus link", "s1 s1 s1 s1", 2, Some(0)),
        ("cinquefoil", "s1 s1 s1 s1 s1", 2, Some(1)),
        ("Borromean rings", "s1 s2^-1 s1 s2^-1 s1 s2^-1", 3, Some(1)),
        ("(3,3) torus link", "s1 s2 s1 s2 s1 s2", 3, Some(1)),
        ("connected sum of trefoils", "s1 s1 s1 s2 s2 s2", 3, Some(0)),
    ];
    table
        .into_iter()
        .map(|(name, text, n, arf)| CuratedLink {
            name,
            word: BraidWord::parse(text, n).expect("curated words parse"),
            arf,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str, n: usize) -> BraidWord {
        BraidWord::parse(text, n).unwrap()
    }

    fn int(v: i64) -> CycloNum {
        CycloNum::from_integer(v)
    }

    #[test]
    fn t_r_examples() {
        assert_eq!(t_r(&w("", 2), 1).unwrap(), int(2));
        assert_eq!(t_r(&w("s1", 2), 1).unwrap(), CycloNum::sqrt2());
        let tre = w("s1 s1 s1", 2);
        assert_eq!(t_r(&tre, -1).unwrap(), -t_r(&tre, 1).unwrap());
        assert_eq!(t_r(&tre, 2), Err(InvError::BadAlpha(2)));
    }

    #[test]
    fn jones4_examples() {
        assert_eq!(jones4(&w("s1", 2)).unwrap(), int(1));
        assert_eq!(jones4(&w("s1 s1 s1", 2)).unwrap(), int(-1));
        assert_eq!(jones4(&w("s1 s1", 2)).unwrap(), int(0));
        assert_eq!(jones4(&w("", 2)).unwrap(), -CycloNum::sqrt2());
        assert_eq!(jones4(&w("", 3)).unwrap(), int(2));
    }

    #[test]
    fn arf_examples() {
        let d0 = Arf {
            defined: true,
            value: Some(0),
        };
        let d1 = Arf {
            defined: true,
            value: Some(1),
        };
        assert_eq!(arf(&w("s1", 2)).unwrap(), d0);
        assert_eq!(arf(&w("s1 s1 s1", 2)).unwrap(), d1);
        assert_eq!(
            arf(&w("s1 s1", 2)).unwrap(),
            Arf {
                defined: false,
                value: None
            }
        );
        assert!(matches!(
            arf_from_j4(&CycloNum::i(), 1),
            Err(InvError::NotTrichotomous { .. })
        ));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(kauffman_oracle(&w("s1", 2)).unwrap(), int(1));
        assert_eq!(kauffman_oracle(&w("s1 s1 s1", 2)).unwrap(), int(-1));
        assert_eq!(kauffman_oracle(&w("", 2)).unwrap(), -CycloNum::sqrt2());
        let long = BraidWord::from_signed(2, &[1; 17]).unwrap();
        assert_eq!(
            kauffman_oracle(&long),
            Err(InvError::TooManyCrossings { len: 17, cap: 16 })
        );
    }

    #[test]
    fn oracle_full_polynomials() {
        // V(right trefoil) = t + t^3 - t^4 with t = A^{-4}
        let expected: Laurent = [(-4, 1), (-12, 1), (-16, -1)].into_iter().collect();
        assert_eq!(jones_in_a(&w("s1 s1 s1", 2)).unwrap(), expected);
        // V(figure-eight) = t^2 - t + 1 - t^-1 + t^-2
        let fig8: Laurent = [(-8, 1), (-4, -1), (0, 1), (4, -1), (8, 1)]
            .into_iter()
            .collect();
        assert_eq!(jones_in_a(&w("s1 s2^-1 s1 s2^-1", 3)).unwrap(), fig8);
    }

    #[test]
    fn direct_formula_agrees() {
        for link in curated_links() {
            assert_eq!(
                jones4_direct(&link.word).unwrap(),
                jones4(&link.word).unwrap(),
                "{}",
                link.name
            );
        }
    }

    #[test]
    fn curated_agrees_with_oracle() {
        for link in curated_links() {
            let j = jones4(&link.word).unwrap();
            assert_eq!(j, kauffman_oracle(&link.word).unwrap(), "{}", link.name);
            assert_eq!(arf(&link.word).unwrap().value, link.arf, "{}", link.name);
        }
    }

    #[test]
    fn tl_examples() {
        let r3 = verify_tl_relations(3).unwrap();
        assert!(r3.passed());
        assert_eq!(r3.checks.len(), 4);
        assert!(!tl1_holds_for_r());
        assert!(tl1_holds(&mats::r_prime(), &CycloNum::i()));
        let a1 = mats::r_prime().kron(&ExactMatrix::identity(2));
        let a2 = ExactMatrix::identity(2).kron(&mats::r_prime());
        let d = &a1 - &a2;
        assert_eq!(&d * &d, ExactMatrix::identity(8).scale(&CycloNum::i()));
    }
}
