//! Braid group representations built from the R-matrix: `pi_n`, the
//! renormalized `pi'_n`, and the irreducible odd-strand model `rho1_hat`.

use std::sync::OnceLock;

use serde::Serialize;

use crate::braid::{BraidError, BraidWord, Letter};
use crate::cyclo::CycloNum;
use crate::linalg::{self, conjugate_by, ExactMatrix, LinalgError, MonomialMatrix};

/// The fixed small matrices everything else is assembled from.
pub mod mats {
    use super::*;

    fn with_int(rows: [[i64; 2]; 2]) -> ExactMatrix {
        ExactMatrix::from_int_rows(rows)
    }

    /// `(1/√2) [[1,0,0,1],[0,1,-1,0],[0,1,1,0],[-1,0,0,1]]`
    pub fn r() -> ExactMatrix {
        ExactMatrix::from_int_rows([[1, 0, 0, 1], [0, 1, -1, 0], [0, 1, 1, 0], [-1, 0, 0, 1]])
            .scale(&CycloNum::inv_sqrt2())
    }

    /// `R' = -conj(z) R`, the normalization with eigenvalues `-1` and `i`.
    pub fn r_prime() -> ExactMatrix {
        r().scale(&-CycloNum::zeta().conj())
    }

    pub fn s() -> ExactMatrix {
        with_int([[0, 1], [-1, 0]])
    }

    pub fn sigma_x() -> ExactMatrix {
        with_int([[0, 1], [1, 0]])
    }

    pub fn sigma_z() -> ExactMatrix {
        with_int([[1, 0], [0, -1]])
    }

    pub fn p_s() -> ExactMatrix {
        let i = CycloNum::i();
        ExactMatrix::from_fn(2, |r, c| if r == c { CycloNum::one() } else { i.clone() })
    }

    pub fn p_s_inv() -> ExactMatrix {
        let i = CycloNum::i();
        let half = CycloNum::from_ratio(1, 2);
        ExactMatrix::from_fn(2, |r, c| if r == c { half.clone() } else { -&i * &half })
    }

    pub fn p_sigma_x() -> ExactMatrix {
        with_int([[1, -1], [1, 1]])
    }

    pub fn p_sigma_x_inv() -> ExactMatrix {
        with_int([[1, 1], [-1, 1]]).scale(&CycloNum::from_ratio(1, 2))
    }

    /// `diag(z, conj z)`
    pub fn d() -> ExactMatrix {
        diag(&[CycloNum::zeta(), CycloNum::zeta().conj()])
    }

    /// `diag(z, conj z, conj z, z)`
    pub fn big_d() -> ExactMatrix {
        let (z, zb) = (CycloNum::zeta(), CycloNum::zeta().conj());
        diag(&[z.clone(), zb.clone(), zb, z])
    }

    /// `(1/√2) [[1,1],[-1,1]]`
    pub fn m() -> ExactMatrix {
        with_int([[1, 1], [-1, 1]]).scale(&CycloNum::inv_sqrt2())
    }

    pub fn diag(entries: &[CycloNum]) -> ExactMatrix {
        ExactMatrix::from_fn(entries.len(), |r, c| {
            if r == c {
                entries[r].clone()
            } else {
                CycloNum::zero()
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("the rho1_hat model needs an odd strand count >= 3, got {0}")]
    Parity(usize),
    #[error("representation needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("word on {word} strands evaluated in a {rep}-strand representation")]
    StrandMismatch { word: usize, rep: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepKind {
    /// `sigma_i -> I^{⊗i-1} ⊗ R ⊗ I^{⊗n-i-1}`
    Pi,
    /// As `Pi` with `R'` in place of `R`.
    PiPrime,
    /// `2^k`-dimensional irreducible model on `n = 2k+1` strands.
    Rho1Hat,
}

impl RepKind {
    pub const ALL: [RepKind; 3] = [RepKind::Pi, RepKind::PiPrime, RepKind::Rho1Hat];

    pub fn dim(self, n: usize) -> usize {
        match self {
            RepKind::Pi | RepKind::PiPrime => 1 << n,
            RepKind::Rho1Hat => 1 << ((n - 1) / 2),
        }
    }

    fn check(self, n: usize) -> Result<(), RepError> {
        if n < 2 {
            return Err(RepError::TooFewStrands(n));
        }
        if self == RepKind::Rho1Hat && (n.is_multiple_of(2) || n < 3) {
            return Err(RepError::Parity(n));
        }
        Ok(())
    }
}

/// The image of `sigma_i^{±1}`, computed from scratch.
pub fn generator_image(
    kind: RepKind,
    n: usize,
    i: usize,
    inverse: bool,
) -> Result<ExactMatrix, RepError> {
    kind.check(n)?;
    if i == 0 || i >= n {
        return Err(BraidError::IndexOutOfRange {
            index: i,
            strands: n,
        }
        .into());
    }
    let pick = |m: ExactMatrix| -> Result<ExactMatrix, RepError> {
        Ok(if inverse { m.inverse()? } else { m })
    };
    Ok(match kind {
        RepKind::Pi => linalg::site_operator(n, i, &pick(mats::r())?)?,
        RepKind::PiPrime => linalg::site_operator(n, i, &pick(mats::r_prime())?)?,
        RepKind::Rho1Hat => {
            let k = (n - 1) / 2;
            if i == 1 {
                linalg::single_site_operator(k, 1, &pick(mats::d())?)?
            } else if i.is_multiple_of(2) {
                linalg::single_site_operator(k, i / 2, &pick(mats::m())?)?
            } else {
                linalg::site_operator(k, (i - 1) / 2, &pick(mats::big_d())?)?
            }
        }
    })
}

/// A representation on a fixed strand count with write-once caches of the
/// generator images and their inverses.
#[derive(Debug)]
pub struct Representation {
    kind: RepKind,
    strands: usize,
    gens: Vec<OnceLock<ExactMatrix>>,
    invs: Vec<OnceLock<ExactMatrix>>,
}

impl Representation {
    pub fn new(kind: RepKind, strands: usize) -> Result<Self, RepError> {
        kind.check(strands)?;
        Ok(Representation {
            kind,
            strands,
            gens: (1..strands).map(|_| OnceLock::new()).collect(),
            invs: (1..strands).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn kind(&self) -> RepKind {
        self.kind
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn dim(&self) -> usize {
        self.kind.dim(self.strands)
    }

    /// Cached image of `sigma_i` (or its inverse).
    pub fn generator(&self, i: usize, inverse: bool) -> Result<&ExactMatrix, RepError> {
        if i == 0 || i >= self.strands {
            return Err(BraidError::IndexOutOfRange {
                index: i,
                strands: self.strands,
            }
            .into());
        }
        let slot = if inverse {
            &self.invs[i - 1]
        } else {
            &self.gens[i - 1]
        };
        if let Some(m) = slot.get() {
            return Ok(m);
        }
        let m = generator_image(self.kind, self.strands, i, inverse)?;
        Ok(slot.get_or_init(|| m))
    }

    pub fn evaluate(&self, w: &BraidWord) -> Result<ExactMatrix, RepError> {
        if w.strands() != self.strands {
            return Err(RepError::StrandMismatch {
                word: w.strands(),
                rep: self.strands,
            });
        }
        self.evaluate_letters(w.letters())
    }

    /// Ordered product of generator images; letters only need to be in
    /// range, so words on fewer strands evaluate through the inclusion.
    pub fn evaluate_letters(&self, letters: &[Letter]) -> Result<ExactMatrix, RepError> {
        let mut acc: Option<ExactMatrix> = None;
        for l in letters {
            let g = self.generator(l.index, l.inverse)?;
            acc = Some(match acc {
                None => g.clone(),
                Some(a) => &a * g,
            });
        }
        Ok(acc.unwrap_or_else(|| ExactMatrix::identity(self.dim())))
    }

    /// Every (B1)/(B2) relation that fails, as human-readable labels.
    pub fn braid_relation_failures(&self) -> Result<Vec<String>, RepError> {
        let mut failures = Vec::new();
        let n = self.strands;
        for i in 1..n {
            for j in i + 2..n {
                let (a, b) = (self.generator(i, false)?, self.generator(j, false)?);
                if a * b != b * a {
                    failures.push(format!("B1 s{i} s{j}"));
                }
            }
        }
        for i in 1..n.saturating_sub(1) {
            let (a, b) = (self.generator(i, false)?, self.generator(i + 1, false)?);
            if &(a * b) * a != &(b * a) * b {
                failures.push(format!("B2 s{i} s{}", i + 1));
            }
        }
        Ok(failures)
    }
}

/// `(B ⊗ I)(I ⊗ B)(B ⊗ I) = (I ⊗ B)(B ⊗ I)(I ⊗ B)` for a 4x4 `b`.
pub fn satisfies_ybe(b: &ExactMatrix) -> bool {
    let i2 = ExactMatrix::identity(2);
    let l = b.kron(&i2);
    let r = i2.kron(b);
    &(&l * &r) * &l == &(&r * &l) * &r
}

/// `g_i = pi_n(sigma_i^2)`.
pub fn pure_generator(n: usize, i: usize) -> Result<ExactMatrix, RepError> {
    let r = mats::r();
    Ok(linalg::site_operator(n, i, &(&r * &r))?)
}

/// `g_i` in monomial storage, scaled by `c` (use `-i` for the `R'` images).
pub fn pure_generator_monomial(
    n: usize,
    i: usize,
    c: &CycloNum,
) -> Result<MonomialMatrix, RepError> {
    let r = mats::r();
    let block = MonomialMatrix::from_dense(&(&r * &r).scale(c)).expect("R^2 is monomial");
    Ok(MonomialMatrix::site(n, i, &block)?)
}

/// `P_n = (P_s ⊗ P_σx)^{⊗⌊n/2⌋} ⊗ I_2^{⊗(n mod 2)}`.
pub fn basis_change(n: usize) -> ExactMatrix {
    basis_change_from(n, mats::p_s(), mats::p_sigma_x())
}

/// `P_n^{-1}`, assembled from the 2x2 inverses.
pub fn basis_change_inverse(n: usize) -> ExactMatrix {
    basis_change_from(n, mats::p_s_inv(), mats::p_sigma_x_inv())
}

fn basis_change_from(n: usize, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix {
    let mut factors = Vec::with_capacity(n);
    for _ in 0..n / 2 {
        factors.push(a.clone());
        factors.push(b.clone());
    }
    if n % 2 == 1 {
        factors.push(ExactMatrix::identity(2));
    }
    ExactMatrix::tensor(&factors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClauseStatus {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClauseCheck {
    pub clause: char,
    pub status: ClauseStatus,
    /// Number of individual identities checked.
    pub checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Lemma22Report {
    pub n: usize,
    pub clauses: Vec<ClauseCheck>,
}

impl Lemma22Report {
    /// True when no clause failed.
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status != ClauseStatus::Fail)
    }

    pub fn status(&self, clause: char) -> Option<ClauseStatus> {
        self.clauses
            .iter()
            .find(|c| c.clause == clause)
            .map(|c| c.status)
    }
}

struct Tally(Vec<bool>);

impl Tally {
    fn into_check(self, clause: char) -> ClauseCheck {
        let status = if self.0.is_empty() {
            ClauseStatus::Vacuous
        } else if self.0.iter().all(|&b| b) {
            ClauseStatus::Pass
        } else {
            ClauseStatus::Fail
        };
        ClauseCheck {
            clause,
            status,
            checked: self.0.len(),
        }
    }
}

/// Checks the eleven matrix identities about `R`, `g_i` and the basis
/// changes on `n` strands. Clauses needing more sites than `n` provides
/// are reported vacuous.
pub fn verify_lemma22(n: usize) -> Result<Lemma22Report, RepError> {
    if n < 2 {
        return Err(RepError::TooFewStrands(n));
    }
    let i2 = ExactMatrix::identity(2);
    let i4 = ExactMatrix::identity(4);
    let r = mats::r();
    let r_inv = r.inverse()?;
    let r2 = &r * &r;
    let r_inv2 = &r_inv * &r_inv;
    let (s, sx, sz) = (mats::s(), mats::sigma_x(), mats::sigma_z());
    let isq = CycloNum::inv_sqrt2();
    let i = CycloNum::i();
    let dim = 1usize << n;
    let pi = Representation::new(RepKind::Pi, n)?;
    let g: Vec<ExactMatrix> = (1..n)
        .map(|k| pure_generator(n, k))
        .collect::<Result<_, _>>()?;
    let g_at = |k: usize| &g[k - 1];
    let mut out = Vec::new();

    out.push(Tally(vec![r2 == s.kron(&sx)]).into_check('a'));
    out.push(
        Tally(vec![
            r == (&r2 + &i4).scale(&isq),
            r_inv == (&r_inv2 + &i4).scale(&isq),
        ])
        .into_check('b'),
    );

    let three_site = n >= 3;
    let lhs_c = &r2.kron(&i2) * &i2.kron(&r2);
    let rhs_c = &i2.kron(&r2) * &r2.kron(&i2);
    out.push(
        Tally(if three_site {
            vec![lhs_c == -&rhs_c]
        } else {
            vec![]
        })
        .into_check('c'),
    );

    let mut d = Vec::new();
    for k in 1..n.saturating_sub(1) {
        d.push(g_at(k) * g_at(k + 1) == -(g_at(k + 1) * g_at(k)));
    }
    out.push(Tally(d).into_check('d'));

    let e = if three_site {
        let lhs = &(&r_inv.kron(&i2) * &i2.kron(&r2)) * &r.kron(&i2);
        vec![lhs == rhs_c]
    } else {
        vec![]
    };
    out.push(Tally(e).into_check('e'));

    let mut f = Vec::new();
    for k in 1..n {
        let (p, p_inv) = (pi.generator(k, false)?, pi.generator(k, true)?);
        for j in [k.wrapping_sub(1), k + 1] {
            if j >= 1 && j < n {
                f.push(&(p_inv * g_at(j)) * p == g_at(j) * g_at(k));
            }
        }
    }
    out.push(Tally(f).into_check('f'));

    let mut far = Vec::new();
    for a in 1..n {
        for b in 1..n {
            if a.abs_diff(b) >= 2 {
                far.push(g_at(a) * g_at(b) == g_at(b) * g_at(a));
                let p = pi.generator(a, false)?;
                far.push(p * g_at(b) == g_at(b) * p);
            }
        }
    }
    out.push(Tally(far).into_check('g'));

    let mut h = vec![r2.pow(2) == -&i4];
    let minus_id = -ExactMatrix::identity(dim);
    h.extend(g.iter().map(|gk| gk * gk == minus_id));
    out.push(Tally(h).into_check('h'));

    let (ps, psx) = (mats::p_s(), mats::p_sigma_x());
    out.push(
        Tally(vec![
            conjugate_by(&ps, &s)? == sz.scale(&i),
            conjugate_by(&ps, &sx)? == sx,
        ])
        .into_check('i'),
    );
    out.push(
        Tally(vec![
            conjugate_by(&psx, &sx)? == sz,
            conjugate_by(&psx, &s)? == s,
        ])
        .into_check('j'),
    );

    let p = basis_change(n);
    let p_inv = basis_change_inverse(n);
    let mut k_checks = vec![(&p_inv * &p).is_identity()];
    let zz = sz.kron(&sz).scale(&i);
    for k in 1..n {
        let conj = &(&p_inv * g_at(k)) * &p;
        let expected = if k % 2 == 1 {
            linalg::site_operator(n, k, &zz)?
        } else {
            g_at(k).clone()
        };
        k_checks.push(conj == expected);
    }
    out.push(Tally(k_checks).into_check('k'));

    Ok(Lemma22Report { n, clauses: out })
}
