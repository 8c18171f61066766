//! Irreducible representations and character tables of `E_m^nu`, and the
//! decomposition of the pure-braid image into irreducibles.

use std::fmt;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclo::CycloNum;
use crate::esgroup::{ConjugacyClass, EsElement, EsError, EsGroup, Nu, Phi};
use crate::linalg::{self, ExactMatrix, MonomialMatrix};
use crate::rep::{mats, RepKind};

/// Largest `m` for the orthogonality checks.
pub const ORTHOGONALITY_CAP: usize = 9;
/// Largest `k` for the restriction check.
pub const RESTRICTION_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharError {
    #[error("{which} needs {parity} m, got m = {m}")]
    Parity {
        which: Irrep,
        parity: &'static str,
        m: usize,
    },
    #[error("linear character index {0:#b} does not fit in m = {1}")]
    BadLinear(u64, usize),
    #[error("multiplicity of {label} is {value}, not a non-negative integer")]
    NonIntegral { label: String, value: String },
    #[error("class function has {found} values for {expected} classes")]
    Length { expected: usize, found: usize },
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error(transparent)]
    Es(#[from] EsError),
}

/// Labels for the irreducible representations of `E_m^nu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Irrep {
    /// The `2^k`-dimensional irrep for `m = 2k`.
    Rho1,
    /// The `2^{k-1}`-dimensional irrep for `m = 2k-1` with `+i` on `x_{2k-1}`.
    Lambda1,
    /// As `Lambda1` with the opposite sign on `x_{2k-1}`.
    Lambda2,
    /// `x_i -> (-1)^{beta_i}`, with the center acting trivially.
    Linear(u64),
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Irrep::Rho1 => f.write_str("V1"),
            Irrep::Lambda1 => f.write_str("W1"),
            Irrep::Lambda2 => f.write_str("W2"),
            Irrep::Linear(b) => write!(f, "L{b}"),
        }
    }
}

impl Serialize for Irrep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Irrep {
    pub fn dim(&self, m: usize) -> usize {
        match self {
            Irrep::Rho1 => 1 << (m / 2),
            Irrep::Lambda1 | Irrep::Lambda2 => 1 << (m.div_ceil(2) - 1),
            Irrep::Linear(_) => 1,
        }
    }
}

fn lift(dense: ExactMatrix) -> MonomialMatrix {
    MonomialMatrix::from_dense(&dense).expect("irrep generators are monomial")
}

/// `c * block` on tensor factor `pos` of `factors` qubits (a 1x1 scalar
/// when there are no factors).
fn on_factor(factors: usize, pos: usize, block: &ExactMatrix, c: &CycloNum) -> ExactMatrix {
    linalg::single_site_operator(factors, pos, block)
        .expect("factor in range")
        .scale(c)
}

/// Monomial generator images `x_1, ..., x_m`.
pub fn irrep_monomials(group: &EsGroup, which: Irrep) -> Result<Vec<MonomialMatrix>, CharError> {
    let m = group.rank();
    let i = CycloNum::i();
    let (s, sz) = (mats::s(), mats::sigma_z());
    let zz = sz.kron(&sz);
    let twist = match group.nu() {
        Nu::Minus => CycloNum::one(),
        Nu::Plus => i.clone(),
    };
    let ti = &twist * &i;
    let mut out = Vec::with_capacity(m);
    match which {
        Irrep::Linear(beta) => {
            if m < 64 && beta >> m != 0 {
                return Err(CharError::BadLinear(beta, m));
            }
            for j in 0..m {
                let v = if beta >> j & 1 == 1 { -1 } else { 1 };
                out.push(MonomialMatrix::scalar(1, CycloNum::from_integer(v)));
            }
        }
        Irrep::Rho1 => {
            if !m.is_multiple_of(2) {
                return Err(CharError::Parity {
                    which,
                    parity: "even",
                    m,
                });
            }
            let k = m / 2;
            for j in 1..=m {
                out.push(lift(if j == 1 {
                    on_factor(k, 1, &sz, &ti)
                } else if j % 2 == 0 {
                    on_factor(k, j / 2, &s, &twist)
                } else {
                    linalg::site_operator(k, (j - 1) / 2, &zz)
                        .expect("site in range")
                        .scale(&ti)
                }));
            }
        }
        Irrep::Lambda1 | Irrep::Lambda2 => {
            if m % 2 != 1 {
                return Err(CharError::Parity {
                    which,
                    parity: "odd",
                    m,
                });
            }
            let k = m.div_ceil(2);
            let f = k - 1;
            let sign = if which == Irrep::Lambda1 {
                CycloNum::one()
            } else {
                -CycloNum::one()
            };
            for j in 1..=m {
                out.push(if j == m {
                    let c = &ti * &sign;
                    if f == 0 {
                        MonomialMatrix::scalar(1, c)
                    } else {
                        lift(on_factor(f, f, &sz, &c))
                    }
                } else if j == 1 {
                    lift(on_factor(f, 1, &sz, &ti))
                } else if j % 2 == 0 {
                    lift(on_factor(f, j / 2, &s, &twist))
                } else {
                    lift(
                        linalg::site_operator(f, (j - 1) / 2, &zz)
                            .expect("site in range")
                            .scale(&ti),
                    )
                });
            }
        }
    }
    Ok(out)
}

/// Dense generator images `x_1, ..., x_m` of the chosen irrep.
pub fn irrep_matrices(group: &EsGroup, which: Irrep) -> Result<Vec<ExactMatrix>, CharError> {
    Ok(irrep_monomials(group, which)?
        .iter()
        .map(MonomialMatrix::to_dense)
        .collect())
}

/// Image of a normal form under generator images `gens`.
pub fn image_of(gens: &[MonomialMatrix], x: &EsElement) -> MonomialMatrix {
    let dim = gens.first().map_or(1, MonomialMatrix::dim);
    let mut acc = MonomialMatrix::identity(dim);
    for (j, g) in gens.iter().enumerate() {
        if x.alpha() >> j & 1 == 1 {
            acc = &acc * g;
        }
    }
    if x.is_negative() {
        -&acc
    } else {
        acc
    }
}

/// Whether `gens` satisfy the defining relations of `E_m^nu` when the
/// central element `-1` acts as the scalar `minus_one`.
pub fn satisfies_relations(gens: &[MonomialMatrix], nu: Nu, minus_one: &CycloNum) -> bool {
    let sq = match nu {
        Nu::Minus => minus_one.clone(),
        Nu::Plus => CycloNum::one(),
    };
    gens.iter().enumerate().all(|(a, ga)| {
        (ga * ga).as_scalar().as_ref() == Some(&sq)
            && gens.iter().enumerate().skip(a + 1).all(|(b, gb)| {
                let (ab, ba) = (ga * gb, gb * ga);
                if b == a + 1 {
                    ab == ba.scale(minus_one)
                } else {
                    ab == ba
                }
            })
    })
}

/// Character table of `E_m^nu`. Linear characters are evaluated on demand.
#[derive(Debug, Clone)]
pub struct CharTable {
    group: EsGroup,
    classes: Vec<ConjugacyClass>,
    rows: Vec<Irrep>,
    big: Vec<Vec<CycloNum>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Multiplicity {
    pub irrep: Irrep,
    pub dim: usize,
    pub count: u64,
}

impl CharTable {
    pub fn new(group: EsGroup) -> Result<Self, CharError> {
        let classes = group.conjugacy_classes()?;
        let m = group.rank();
        let big_labels: Vec<Irrep> = if m.is_multiple_of(2) {
            vec![Irrep::Rho1]
        } else {
            vec![Irrep::Lambda1, Irrep::Lambda2]
        };
        let big = big_labels
            .iter()
            .map(|&l| {
                let gens = irrep_monomials(&group, l)?;
                Ok(classes
                    .par_iter()
                    .map(|c| image_of(&gens, &c.representative).trace())
                    .collect())
            })
            .collect::<Result<Vec<Vec<CycloNum>>, CharError>>()?;
        let mut rows = big_labels;
        rows.extend((0..1u64 << m).map(Irrep::Linear));
        Ok(CharTable {
            group,
            classes,
            rows,
            big,
        })
    }

    pub fn group(&self) -> &EsGroup {
        &self.group
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.rows
    }

    pub fn dims(&self) -> Vec<usize> {
        let m = self.group.rank();
        self.rows.iter().map(|r| r.dim(m)).collect()
    }

    pub fn class_index(&self, x: &EsElement) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(x))
    }

    /// `chi_row(class)`
    pub fn value(&self, row: usize, class: usize) -> CycloNum {
        match self.rows[row] {
            Irrep::Linear(beta) => {
                let a = self.classes[class].representative.alpha();
                CycloNum::from_integer(if (a & beta).count_ones().is_multiple_of(2) {
                    1
                } else {
                    -1
                })
            }
            _ => self.big[row][class].clone(),
        }
    }

    pub fn row_values(&self, row: usize) -> Vec<CycloNum> {
        (0..self.classes.len())
            .map(|c| self.value(row, c))
            .collect()
    }

    pub fn row_of(&self, irrep: Irrep) -> Option<usize> {
        match irrep {
            Irrep::Linear(b) => {
                let offset = self.big.len();
                (b < 1 << self.group.rank()).then(|| offset + b as usize)
            }
            _ => self.rows.iter().position(|r| *r == irrep),
        }
    }

    fn check_cap(&self) -> Result<(), CharError> {
        let m = self.group.rank();
        if m > ORTHOGONALITY_CAP {
            return Err(CharError::CapExceeded {
                what: "m",
                value: m,
                cap: ORTHOGONALITY_CAP,
            });
        }
        Ok(())
    }

    fn materialize(&self) -> Vec<Vec<CycloNum>> {
        (0..self.rows.len()).map(|r| self.row_values(r)).collect()
    }

    /// `sum_g chi_i(g) conj(chi_j(g)) = |G| delta_ij` for all row pairs.
    pub fn row_orthogonality(&self) -> Result<bool, CharError> {
        self.check_cap()?;
        let table = self.materialize();
        let sizes: Vec<CycloNum> = self
            .classes
            .iter()
            .map(|c| CycloNum::from_integer(c.size() as i64))
            .collect();
        let order = CycloNum::from_integer(self.group.order() as i64);
        let conj: Vec<Vec<CycloNum>> = table
            .iter()
            .map(|r| r.iter().map(CycloNum::conj).collect())
            .collect();
        Ok((0..table.len()).into_par_iter().all(|i| {
            let weighted: Vec<CycloNum> = table[i].iter().zip(&sizes).map(|(v, s)| v * s).collect();
            (i..table.len()).all(|j| {
                let ip: CycloNum = weighted.iter().zip(&conj[j]).map(|(a, b)| a * b).sum();
                if i == j {
                    ip == order
                } else {
                    ip.is_zero()
                }
            })
        }))
    }

    /// `sum_i chi_i(h) conj(chi_i(g)) = 0` for non-conjugate `g, h`, and
    /// `|G| / |class|` on the diagonal.
    pub fn column_orthogonality(&self) -> Result<bool, CharError> {
        self.check_cap()?;
        let table = self.materialize();
        let ncls = self.classes.len();
        let cols: Vec<Vec<CycloNum>> = (0..ncls)
            .map(|c| table.iter().map(|r| r[c].clone()).collect())
            .collect();
        let order = self.group.order() as i64;
        Ok((0..ncls).into_par_iter().all(|g| {
            let conj_g: Vec<CycloNum> = cols[g].iter().map(CycloNum::conj).collect();
            (g..ncls).all(|h| {
                let s: CycloNum = cols[h].iter().zip(&conj_g).map(|(a, b)| a * b).sum();
                if g == h {
                    s == CycloNum::from_integer(order / self.classes[g].size() as i64)
                } else {
                    s.is_zero()
                }
            })
        }))
    }

    /// Multiplicities of each irreducible in a class function with
    /// `class_fn[c]` the value on class `c`; only nonzero entries are kept.
    pub fn decompose(&self, class_fn: &[CycloNum]) -> Result<Vec<Multiplicity>, CharError> {
        if class_fn.len() != self.classes.len() {
            return Err(CharError::Length {
                expected: self.classes.len(),
                found: class_fn.len(),
            });
        }
        let m = self.group.rank();
        let weighted: Vec<CycloNum> = class_fn
            .iter()
            .zip(&self.classes)
            .map(|(v, c)| v * CycloNum::from_integer(c.size() as i64))
            .collect();
        let order_inv = CycloNum::from_ratio(1, self.group.order() as i64);
        let counts: Vec<Result<Option<Multiplicity>, CharError>> = (0..self.rows.len())
            .into_par_iter()
            .map(|r| {
                let ip: CycloNum = weighted
                    .iter()
                    .enumerate()
                    .filter(|(_, w)| !w.is_zero())
                    .map(|(c, w)| w * self.value(r, c).conj())
                    .sum::<CycloNum>()
                    * &order_inv;
                let count = ip.to_integer().and_then(|v| v.to_u64()).ok_or_else(|| {
                    CharError::NonIntegral {
                        label: self.rows[r].to_string(),
                        value: ip.to_string(),
                    }
                })?;
                Ok((count > 0).then(|| Multiplicity {
                    irrep: self.rows[r],
                    dim: self.rows[r].dim(m),
                    count,
                }))
            })
            .collect();
        counts.into_iter().filter_map(Result::transpose).collect()
    }

    pub fn to_json(&self) -> TableJson {
        let m = self.group.rank();
        TableJson {
            m,
            nu: self.group.nu(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassJson {
                    representative: c.representative,
                    size: c.size(),
                })
                .collect(),
            rows: (0..self.rows.len())
                .map(|r| RowJson {
                    irrep: self.rows[r],
                    dim: self.rows[r].dim(m),
                    values: self.row_values(r).iter().map(|v| v.to_string()).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableJson {
    pub m: usize,
    pub nu: Nu,
    pub classes: Vec<ClassJson>,
    pub rows: Vec<RowJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassJson {
    pub representative: EsElement,
    pub size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RowJson {
    pub irrep: Irrep,
    pub dim: usize,
    pub values: Vec<String>,
}

/// Traces of `phi_n` on the class representatives of `E_{n-1}^nu`, plus
/// the table those classes belong to.
pub fn phi_character(n: usize, kind: RepKind) -> Result<(CharTable, Vec<CycloNum>), CharError> {
    let phi = Phi::new(n, kind)?;
    let table = CharTable::new(*phi.group())?;
    let values = table
        .classes()
        .par_iter()
        .map(|c| phi.image(&c.representative).trace())
        .collect();
    Ok((table, values))
}

/// Decomposition of the `2^n`-dimensional pure-braid image into
/// irreducibles of `E_{n-1}^{-1}`.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub n: usize,
    pub m: usize,
    pub multiplicities: Vec<Multiplicity>,
    pub total_dim: u64,
    pub expected_dim: u64,
}

impl Decomposition {
    pub fn count_of(&self, irrep: Irrep) -> u64 {
        self.multiplicities
            .iter()
            .find(|m| m.irrep == irrep)
            .map_or(0, |m| m.count)
    }
}

pub fn decompose_pi(n: usize) -> Result<Decomposition, CharError> {
    let (table, chi) = phi_character(n, RepKind::Pi)?;
    let multiplicities = table.decompose(&chi)?;
    Ok(Decomposition {
        n,
        m: n - 1,
        total_dim: multiplicities.iter().map(|m| m.count * m.dim as u64).sum(),
        expected_dim: 1 << n,
        multiplicities,
    })
}

/// The character of `rho_1` on `E_{2k}^{-1}`, restricted to the subgroup
/// generated by `x_1..x_{2k-1}`, equals `psi_1 + psi_2` element by element.
pub fn restriction_check(k: usize) -> Result<bool, CharError> {
    if k == 0 || k > RESTRICTION_CAP {
        return Err(CharError::CapExceeded {
            what: "k",
            value: k,
            cap: RESTRICTION_CAP,
        });
    }
    let big = EsGroup::new(2 * k, Nu::Minus)?;
    let small = EsGroup::new(2 * k - 1, Nu::Minus)?;
    let rho = irrep_monomials(&big, Irrep::Rho1)?;
    let l1 = irrep_monomials(&small, Irrep::Lambda1)?;
    let l2 = irrep_monomials(&small, Irrep::Lambda2)?;
    let elems = small.elements()?;
    Ok(elems.par_iter().all(|x| {
        let lifted = big
            .element(x.is_negative(), x.alpha())
            .expect("subgroup element fits");
        image_of(&rho, &lifted).trace() == image_of(&l1, x).trace() + image_of(&l2, x).trace()
    }))
}

/// Closed-form `psi_1`/`psi_2` on `E_{2k-1}^{-1}`, with the sign on `±z`
/// read as `i^k`: `psi_1(±z) = ±i^k 2^{k-1}`, `psi_2 = -psi_1` there.
pub fn psi_closed_form(which: Irrep, x: &EsElement) -> Result<CycloNum, CharError> {
    let m = x.rank();
    if m.is_multiple_of(2) || !matches!(which, Irrep::Lambda1 | Irrep::Lambda2) {
        return Err(CharError::Parity {
            which,
            parity: "odd",
            m,
        });
    }
    let k = m.div_ceil(2);
    let group = EsGroup::new(m, x.nu())?;
    let z = group.z().expect("odd rank");
    let scale = CycloNum::from_integer(1 << (k - 1));
    let sign = CycloNum::from_integer(x.sign());
    Ok(if x.is_scalar() {
        sign * scale
    } else if x.alpha() == z.alpha() {
        let v = sign * CycloNum::i().pow(k as u64) * scale;
        if which == Irrep::Lambda1 {
            v
        } else {
            -v
        }
    } else {
        CycloNum::zero()
    })
}
