//! The groups `E_m^nu`: generators `x_1..x_m` with `x_i^2 = nu`,
//! `x_i x_j = x_j x_i` for `|i-j| >= 2` and `x_{i+1} x_i = -x_i x_{i+1}`,
//! together with their matrix realizations inside the braid images.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Mul;

use rayon::prelude::*;
use serde::Serialize;

use crate::braid::Permutation;
use crate::cyclo::CycloNum;
use crate::linalg::{ExactMatrix, MonomialMatrix};
use crate::rep::{self, RepError, RepKind, Representation};

/// Largest `m` for exhaustive enumeration of `E_m^nu`.
pub const ENUM_CAP: usize = 13;
/// Largest strand count for BFS over the pure-braid image.
pub const PURE_IMAGE_CAP: usize = 10;
/// Largest strand count for BFS over the full braid image.
pub const FULL_IMAGE_CAP: usize = 6;
/// Largest strand count for the matrix model of `E_{n-1}^nu`.
pub const PHI_CAP: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EsError {
    #[error("elements of E_{0}^{1} and E_{2}^{3} cannot be multiplied")]
    ParamMismatch(usize, Nu, usize, Nu),
    #[error("m must be between 1 and 63, got {0}")]
    InvalidRank(usize),
    #[error("{what} = {value} exceeds the cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("the center structure is only defined for odd m, got {0}")]
    EvenRank(usize),
    #[error("bit pattern {0:#b} does not fit in m = {1}")]
    BadAlpha(u64, usize),
    #[error("the pure-braid image is defined for pi and pi-prime only")]
    UnsupportedKind,
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn cap(what: &'static str, value: usize, cap: usize) -> Result<(), EsError> {
    if value > cap {
        return Err(EsError::CapExceeded { what, value, cap });
    }
    Ok(())
}

/// The value of `x_i^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Nu {
    #[serde(rename = "-1")]
    Minus,
    #[serde(rename = "1")]
    Plus,
}

impl Nu {
    pub fn from_sign(s: i64) -> Option<Self> {
        match s {
            1 => Some(Nu::Plus),
            -1 => Some(Nu::Minus),
            _ => None,
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Nu::Plus => 1,
            Nu::Minus => -1,
        }
    }
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign())
    }
}

/// `±x_1^{a_1} ... x_m^{a_m}`; bit `i-1` of `alpha` is the exponent of `x_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EsElement {
    m: u8,
    nu: Nu,
    negative: bool,
    alpha: u64,
}

impl EsElement {
    pub fn rank(&self) -> usize {
        self.m as usize
    }

    pub fn nu(&self) -> Nu {
        self.nu
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn alpha(&self) -> u64 {
        self.alpha
    }

    pub fn sign(&self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn negated(self) -> Self {
        EsElement {
            negative: !self.negative,
            ..self
        }
    }

    /// `±1`
    pub fn is_scalar(&self) -> bool {
        self.alpha == 0
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, EsError> {
        if self.m != other.m || self.nu != other.nu {
            return Err(EsError::ParamMismatch(
                self.m as usize,
                self.nu,
                other.m as usize,
                other.nu,
            ));
        }
        let (a, b) = (self.alpha, other.alpha);
        // Each x_j of the right factor passes every x_i (i > j) of the left
        // one; only i = j + 1 costs a sign. Shared letters then square to nu.
        let mut flips = (a & (b << 1)).count_ones();
        if self.nu == Nu::Minus {
            flips += (a & b).count_ones();
        }
        Ok(EsElement {
            m: self.m,
            nu: self.nu,
            negative: self.negative ^ other.negative ^ (flips % 2 == 1),
            alpha: a ^ b,
        })
    }

    pub fn inverse(&self) -> Self {
        let sq = *self * *self;
        *self * sq
    }

    /// Smallest `k >= 1` with `self^k = 1`.
    pub fn order(&self) -> usize {
        let one = EsElement {
            negative: false,
            alpha: 0,
            ..*self
        };
        let mut acc = *self;
        let mut k = 1;
        while acc != one {
            acc = acc * *self;
            k += 1;
        }
        k
    }

    fn index(&self) -> usize {
        ((self.alpha as usize) << 1) | usize::from(self.negative)
    }
}

impl Mul for EsElement {
    type Output = EsElement;
    /// Panics on a parameter mismatch; see [`EsElement::try_mul`].
    fn mul(self, rhs: EsElement) -> EsElement {
        self.try_mul(&rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl fmt::Display for EsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            f.write_str("-")?;
        }
        if self.alpha == 0 {
            return f.write_str("1");
        }
        for i in 0..self.m {
            if self.alpha >> i & 1 == 1 {
                write!(f, "x{}", i + 1)?;
            }
        }
        Ok(())
    }
}

impl Serialize for EsElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CenterStructure {
    Z2,
    #[serde(rename = "Z2xZ2")]
    Z2xZ2,
    Z4,
}

impl fmt::Display for CenterStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CenterStructure::Z2 => "Z2",
            CenterStructure::Z2xZ2 => "Z2xZ2",
            CenterStructure::Z4 => "Z4",
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyClass {
    pub representative: EsElement,
    pub members: Vec<EsElement>,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EsGroup {
    m: usize,
    nu: Nu,
}

impl EsGroup {
    pub fn new(m: usize, nu: Nu) -> Result<Self, EsError> {
        if m == 0 || m > 63 {
            return Err(EsError::InvalidRank(m));
        }
        Ok(EsGroup { m, nu })
    }

    pub fn rank(&self) -> usize {
        self.m
    }

    pub fn nu(&self) -> Nu {
        self.nu
    }

    /// `2^{m+1}`
    pub fn order(&self) -> u128 {
        1u128 << (self.m + 1)
    }

    pub fn element(&self, negative: bool, alpha: u64) -> Result<EsElement, EsError> {
        if self.m < 64 && alpha >> self.m != 0 {
            return Err(EsError::BadAlpha(alpha, self.m));
        }
        Ok(EsElement {
            m: self.m as u8,
            nu: self.nu,
            negative,
            alpha,
        })
    }

    fn raw(&self, negative: bool, alpha: u64) -> EsElement {
        EsElement {
            m: self.m as u8,
            nu: self.nu,
            negative,
            alpha,
        }
    }

    pub fn identity(&self) -> EsElement {
        self.raw(false, 0)
    }

    pub fn minus_one(&self) -> EsElement {
        self.raw(true, 0)
    }

    /// `x_i`, 1-based.
    pub fn generator(&self, i: usize) -> EsElement {
        assert!(
            (1..=self.m).contains(&i),
            "x{i} is not a generator of E_{}",
            self.m
        );
        self.raw(false, 1 << (i - 1))
    }

    pub fn generators(&self) -> Vec<EsElement> {
        (1..=self.m).map(|i| self.generator(i)).collect()
    }

    /// `z = x_1 x_3 ... x_m` for odd `m`.
    pub fn z(&self) -> Option<EsElement> {
        if self.m.is_multiple_of(2) {
            return None;
        }
        let alpha = (0..self.m).step_by(2).fold(0u64, |a, b| a | 1 << b);
        Some(self.raw(false, alpha))
    }

    /// Every element in normal form, ordered by `(alpha, sign)`.
    pub fn elements(&self) -> Result<Vec<EsElement>, EsError> {
        cap("m", self.m, ENUM_CAP)?;
        Ok((0..1u64 << self.m)
            .flat_map(|a| [self.raw(false, a), self.raw(true, a)])
            .collect())
    }

    /// Size of the closure of `{1}` under right multiplication by the
    /// generators, i.e. the order of the group they generate.
    pub fn closure_order(&self) -> Result<usize, EsError> {
        cap("m", self.m, ENUM_CAP)?;
        // -1 is a generator of the presentation; for m = 1, nu = +1 it is
        // not a word in x_1.
        let mut gens = self.generators();
        gens.push(self.minus_one());
        let mut seen = vec![false; 1 << (self.m + 1)];
        let mut stack = vec![self.identity()];
        seen[self.identity().index()] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y = x * *g;
                if !std::mem::replace(&mut seen[y.index()], true) {
                    count += 1;
                    stack.push(y);
                }
            }
        }
        Ok(count)
    }

    pub fn conjugate(&self, g: &EsElement, x: &EsElement) -> EsElement {
        *g * *x * g.inverse()
    }

    /// Elements commuting with every generator, found by exhaustive search.
    pub fn center(&self) -> Result<Vec<EsElement>, EsError> {
        let gens = self.generators();
        Ok(self
            .elements()?
            .into_iter()
            .filter(|x| gens.iter().all(|g| *x * *g == *g * *x))
            .collect())
    }

    /// The center as predicted in closed form: `{±1}` for even `m`,
    /// `{±1, ±z}` for odd `m`.
    pub fn center_closed_form(&self) -> Vec<EsElement> {
        let mut out = vec![self.identity(), self.minus_one()];
        if let Some(z) = self.z() {
            out.push(z);
            out.push(z.negated());
        }
        out
    }

    /// Isomorphism type of the center for odd `m`, read off from the order
    /// of `z`.
    pub fn center_structure(&self) -> Result<CenterStructure, EsError> {
        let z = self.z().ok_or(EsError::EvenRank(self.m))?;
        Ok(match z.order() {
            4 => CenterStructure::Z4,
            _ => CenterStructure::Z2xZ2,
        })
    }

    /// `Z4` iff `nu = -1` and `k = (m+1)/2` is odd.
    pub fn center_structure_closed_form(&self) -> Result<CenterStructure, EsError> {
        if self.m.is_multiple_of(2) {
            return Err(EsError::EvenRank(self.m));
        }
        let k = self.m.div_ceil(2);
        Ok(if self.nu == Nu::Minus && k % 2 == 1 {
            CenterStructure::Z4
        } else {
            CenterStructure::Z2xZ2
        })
    }

    /// Conjugacy classes by orbit closure under conjugation by generators.
    pub fn conjugacy_classes(&self) -> Result<Vec<ConjugacyClass>, EsError> {
        let all = self.elements()?;
        let gens = self.generators();
        let gen_invs: Vec<EsElement> = gens.iter().map(EsElement::inverse).collect();
        let mut seen = vec![false; all.len()];
        let mut classes = Vec::new();
        for x in all {
            if seen[x.index()] {
                continue;
            }
            seen[x.index()] = true;
            let mut members = vec![x];
            let mut cursor = 0;
            while cursor < members.len() {
                let y = members[cursor];
                cursor += 1;
                for (g, gi) in gens.iter().zip(&gen_invs) {
                    let c = *g * y * *gi;
                    if !std::mem::replace(&mut seen[c.index()], true) {
                        members.push(c);
                    }
                }
            }
            members.sort_by_key(EsElement::index);
            classes.push(ConjugacyClass {
                representative: x,
                members,
            });
        }
        Ok(classes)
    }

    /// Class count predicted in closed form: `2^m + 1` for even `m`,
    /// `2^m + 2` for odd `m`.
    pub fn class_count_closed_form(&self) -> u128 {
        (1u128 << self.m) + if self.m.is_multiple_of(2) { 1 } else { 2 }
    }
}

/// Matrices `x_i -> g_i` (or `-i g_i` for `R'`) realizing `E_{n-1}^nu`
/// inside the pure-braid image on `n` strands.
#[derive(Debug, Clone)]
pub struct Phi {
    n: usize,
    group: EsGroup,
    gens: Vec<MonomialMatrix>,
}

impl Phi {
    pub fn new(n: usize, kind: RepKind) -> Result<Self, EsError> {
        if n < 2 {
            return Err(RepError::TooFewStrands(n).into());
        }
        cap("n", n, PHI_CAP)?;
        let (nu, c) = match kind {
            RepKind::Pi => (Nu::Minus, CycloNum::one()),
            RepKind::PiPrime => (Nu::Plus, -CycloNum::i()),
            RepKind::Rho1Hat => return Err(EsError::UnsupportedKind),
        };
        let gens = (1..n)
            .map(|i| rep::pure_generator_monomial(n, i, &c))
            .collect::<Result<_, _>>()?;
        Ok(Phi {
            n,
            group: EsGroup::new(n - 1, nu)?,
            gens,
        })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &EsGroup {
        &self.group
    }

    pub fn generator_images(&self) -> &[MonomialMatrix] {
        &self.gens
    }

    pub fn image(&self, x: &EsElement) -> MonomialMatrix {
        let dim = 1usize << self.n;
        let mut acc: Option<MonomialMatrix> = None;
        for (i, g) in self.gens.iter().enumerate() {
            if x.alpha >> i & 1 == 1 {
                acc = Some(match acc {
                    None => g.clone(),
                    Some(a) => &a * g,
                });
            }
        }
        let acc = acc.unwrap_or_else(|| MonomialMatrix::identity(dim));
        if x.negative {
            -&acc
        } else {
            acc
        }
    }

    /// Number of distinct matrices among the images of all `2^n` elements.
    pub fn distinct_images(&self) -> Result<usize, EsError> {
        let elems = self.group.elements()?;
        let imgs: HashSet<MonomialMatrix> = elems
            .par_iter()
            .map(|x| self.image(x))
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(imgs.len())
    }

    pub fn is_injective(&self) -> Result<bool, EsError> {
        Ok(self.distinct_images()? as u128 == self.group.order())
    }

    /// `phi(a b) = phi(a) phi(b)` over all pairs.
    pub fn is_homomorphism(&self) -> Result<bool, EsError> {
        let elems = self.group.elements()?;
        let imgs: Vec<MonomialMatrix> = elems.par_iter().map(|x| self.image(x)).collect();
        Ok(elems.par_iter().zip(&imgs).all(|(a, ia)| {
            elems
                .iter()
                .zip(&imgs)
                .all(|(b, ib)| imgs[(*a * *b).index()] == ia * ib)
        }))
    }

    /// For even `n`: `P_n^{-1} phi(z) P_n`, which should be diagonal of
    /// trace zero.
    pub fn z_in_diagonal_basis(&self) -> Option<ExactMatrix> {
        let z = self.group.z()?;
        let p = rep::basis_change(self.n);
        let p_inv = rep::basis_change_inverse(self.n);
        Some(&(&p_inv * &self.image(&z).to_dense()) * &p)
    }
}

fn pure_generators(kind: RepKind, n: usize) -> Result<Vec<MonomialMatrix>, EsError> {
    let c = match kind {
        RepKind::Pi => CycloNum::one(),
        RepKind::PiPrime => -CycloNum::i(),
        RepKind::Rho1Hat => return Err(EsError::UnsupportedKind),
    };
    Ok((1..n)
        .map(|i| rep::pure_generator_monomial(n, i, &c))
        .collect::<Result<_, _>>()?)
}

/// Closure of `{I}` under right multiplication by the pure generators
/// `pi(sigma_i^2)`.
pub fn enumerate_pure_image(kind: RepKind, n: usize) -> Result<Vec<MonomialMatrix>, EsError> {
    if n < 2 {
        return Err(RepError::TooFewStrands(n).into());
    }
    cap("n", n, PURE_IMAGE_CAP)?;
    let gens = pure_generators(kind, n)?;
    let id = MonomialMatrix::identity(1 << n);
    let mut seen: HashSet<MonomialMatrix> = HashSet::from([id.clone()]);
    let mut order = vec![id];
    let mut cursor = 0;
    while cursor < order.len() {
        let x = order[cursor].clone();
        cursor += 1;
        for g in &gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                order.push(y);
            }
        }
    }
    Ok(order)
}

/// Outcome of the relation-pattern check on the pure generators.
#[derive(Debug, Clone, Serialize)]
pub struct RelationPattern {
    /// Common scalar `c` with `g_i^2 = c I`, if all squares agree.
    pub square: Option<String>,
    pub adjacent_anticommute: bool,
    pub far_commute: bool,
}

impl RelationPattern {
    pub fn matches(&self, nu: Nu) -> bool {
        let want = CycloNum::from_integer(nu.sign()).to_string();
        self.square.as_deref() == Some(want.as_str())
            && self.adjacent_anticommute
            && self.far_commute
    }
}

pub fn relation_pattern(kind: RepKind, n: usize) -> Result<RelationPattern, EsError> {
    cap("n", n, PURE_IMAGE_CAP)?;
    let gens = pure_generators(kind, n)?;
    let squares: Vec<Option<CycloNum>> = gens.iter().map(|g| (g * g).as_scalar()).collect();
    let square = match squares.first() {
        Some(Some(c)) if squares.iter().all(|s| s.as_ref() == Some(c)) => Some(c.to_string()),
        _ => None,
    };
    let mut adjacent = true;
    let mut far = true;
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let (ab, ba) = (&gens[i] * &gens[j], &gens[j] * &gens[i]);
            if j == i + 1 {
                adjacent &= ab == -&ba;
            } else {
                far &= ab == ba;
            }
        }
    }
    Ok(RelationPattern {
        square,
        adjacent_anticommute: adjacent,
        far_commute: far,
    })
}

/// BFS over the image of the whole braid group, tracking permutations.
#[derive(Debug, Clone, Serialize)]
pub struct FullImage {
    pub order: usize,
    /// Elements whose braid permutation is trivial.
    pub kernel_order: usize,
    /// Distinct permutations reached.
    pub quotient_order: usize,
    /// Every matrix was reached with a single permutation.
    pub permutation_consistent: bool,
    /// The kernel coincides with the pure-braid image as a set of matrices.
    pub kernel_is_pure_image: bool,
}

pub fn enumerate_full_image(kind: RepKind, n: usize) -> Result<FullImage, EsError> {
    if n < 2 {
        return Err(RepError::TooFewStrands(n).into());
    }
    cap("n", n, FULL_IMAGE_CAP)?;
    let rep = Representation::new(kind, n)?;
    let gens: Vec<(ExactMatrix, Permutation)> = (1..n)
        .map(|i| {
            Ok((
                rep.generator(i, false)?.clone(),
                Permutation::transposition(n, i - 1, i),
            ))
        })
        .collect::<Result<_, RepError>>()?;
    let id = ExactMatrix::identity(rep.dim());
    let mut seen: HashMap<Vec<u8>, Permutation> = HashMap::new();
    seen.insert(id.canonical_bytes(), Permutation::identity(n));
    let mut frontier = vec![(id, Permutation::identity(n))];
    let mut consistent = true;
    while !frontier.is_empty() {
        let products: Vec<(Vec<u8>, ExactMatrix, Permutation)> = frontier
            .par_iter()
            .flat_map_iter(|(x, p)| {
                gens.iter().map(move |(g, t)| {
                    let y = x * g;
                    (y.canonical_bytes(), y, p * t)
                })
            })
            .collect();
        let mut next = Vec::new();
        for (key, y, p) in products {
            match seen.get(&key) {
                Some(q) => consistent &= *q == p,
                None => {
                    seen.insert(key, p.clone());
                    next.push((y, p));
                }
            }
        }
        frontier = next;
    }
    let kernel: HashSet<&Vec<u8>> = seen
        .iter()
        .filter(|(_, p)| p.is_identity())
        .map(|(k, _)| k)
        .collect();
    let perms: HashSet<&Permutation> = seen.values().collect();
    let kernel_is_pure_image = match kind {
        RepKind::Rho1Hat => false,
        _ => {
            let pure: HashSet<Vec<u8>> = enumerate_pure_image(kind, n)?
                .iter()
                .map(|m| m.to_dense().canonical_bytes())
                .collect();
            pure.len() == kernel.len() && pure.iter().all(|k| kernel.contains(k))
        }
    };
    Ok(FullImage {
        order: seen.len(),
        kernel_order: kernel.len(),
        quotient_order: perms.len(),
        permutation_consistent: consistent,
        kernel_is_pure_image,
    })
}

/// Summary of the groups attached to `n` strands.
#[derive(Debug, Clone, Serialize)]
pub struct GroupReport {
    pub n: usize,
    pub kind: RepKind,
    #[serde(rename = "order_H")]
    pub order_h: usize,
    /// `None` above the full-image enumeration cap.
    #[serde(rename = "order_G")]
    pub order_g: Option<usize>,
    pub quotient_order: Option<usize>,
    pub kernel_order: Option<usize>,
    pub permutation_consistent: Option<bool>,
    pub kernel_is_pure_image: Option<bool>,
    /// Parameters of the abstract group `E_{n-1}^nu` matched against H.
    pub m: usize,
    pub nu: Nu,
    pub phi_injective: bool,
    pub relation_pattern: RelationPattern,
    pub center_structure: CenterStructure,
    pub class_count: usize,
}

pub fn group_report(kind: RepKind, n: usize) -> Result<GroupReport, EsError> {
    cap("n", n, PURE_IMAGE_CAP)?;
    let phi = Phi::new(n, kind)?;
    let group = *phi.group();
    let pure = enumerate_pure_image(kind, n)?;
    let full = if n <= FULL_IMAGE_CAP {
        Some(enumerate_full_image(kind, n)?)
    } else {
        None
    };
    let center_structure = if group.rank() % 2 == 0 {
        CenterStructure::Z2
    } else {
        group.center_structure()?
    };
    Ok(GroupReport {
        n,
        kind,
        order_h: pure.len(),
        order_g: full.as_ref().map(|f| f.order),
        quotient_order: full.as_ref().map(|f| f.quotient_order),
        kernel_order: full.as_ref().map(|f| f.kernel_order),
        permutation_consistent: full.as_ref().map(|f| f.permutation_consistent),
        kernel_is_pure_image: full.as_ref().map(|f| f.kernel_is_pure_image),
        m: group.rank(),
        nu: group.nu(),
        phi_injective: phi.is_injective()?,
        relation_pattern: relation_pattern(kind, n)?,
        center_structure,
        class_count: group.conjugacy_classes()?.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(m: usize, nu: Nu) -> EsGroup {
        EsGroup::new(m, nu).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let e = g(4, Nu::Minus);
        let (x1, x2, x3) = (e.generator(1), e.generator(2), e.generator(3));
        assert_eq!(x2 * x1, (x1 * x2).negated());
        assert_eq!(x1 * x1, e.minus_one());
        assert_eq!(x1 * x3, x3 * x1);
        assert_eq!((x1 * x3).to_string(), "x1x3");
        assert_eq!((x2 * x1).to_string(), "-x1x2");
        let plus = g(4, Nu::Plus);
        assert_eq!(plus.generator(1) * plus.generator(1), plus.identity());
        assert_eq!(
            x1.try_mul(&plus.generator(1)),
            Err(EsError::ParamMismatch(4, Nu::Minus, 4, Nu::Plus))
        );
    }

    #[test]
    fn center_examples() {
        let c4 = g(4, Nu::Minus).center().unwrap();
        assert_eq!(c4.len(), 2);
        let e3 = g(3, Nu::Minus);
        let c3: HashSet<_> = e3.center().unwrap().into_iter().collect();
        assert_eq!(c3, e3.center_closed_form().into_iter().collect());
        assert_eq!(g(1, Nu::Minus).center().unwrap().len(), 4);
    }

    #[test]
    fn center_structure_examples() {
        assert_eq!(
            g(1, Nu::Minus).center_structure().unwrap(),
            CenterStructure::Z4
        );
        assert_eq!(
            g(3, Nu::Minus).center_structure().unwrap(),
            CenterStructure::Z2xZ2
        );
        assert_eq!(
            g(1, Nu::Plus).center_structure().unwrap(),
            CenterStructure::Z2xZ2
        );
        assert_eq!(
            g(2, Nu::Minus).center_structure(),
            Err(EsError::EvenRank(2))
        );
    }

    #[test]
    fn class_counts() {
        assert_eq!(g(2, Nu::Minus).conjugacy_classes().unwrap().len(), 5);
        assert_eq!(g(3, Nu::Minus).conjugacy_classes().unwrap().len(), 10);
        assert_eq!(g(1, Nu::Minus).conjugacy_classes().unwrap().len(), 4);
        for m in 1..=9 {
            for nu in [Nu::Minus, Nu::Plus] {
                let e = g(m, nu);
                assert_eq!(
                    e.conjugacy_classes().unwrap().len() as u128,
                    e.class_count_closed_form()
                );
            }
        }
        assert!(matches!(
            g(14, Nu::Minus).conjugacy_classes(),
            Err(EsError::CapExceeded { .. })
        ));
    }

    #[test]
    fn phi_examples() {
        let phi = Phi::new(4, RepKind::Pi).unwrap();
        let e = *phi.group();
        assert_eq!(
            phi.image(&e.generator(1)).to_dense(),
            rep::pure_generator(4, 1).unwrap()
        );
        assert_eq!(
            phi.image(&e.minus_one()).as_scalar(),
            Some(-CycloNum::one())
        );
        let z = phi.image(&e.z().unwrap());
        assert!(z.trace().is_zero());
        assert!(z.as_scalar().is_none());
        let diag = phi.z_in_diagonal_basis().unwrap();
        assert!(diag.is_diagonal());
        assert!(diag.trace().is_zero());
        assert!(phi.is_injective().unwrap());
        assert!(phi.is_homomorphism().unwrap());
    }

    #[test]
    fn image_orders() {
        assert_eq!(enumerate_pure_image(RepKind::Pi, 3).unwrap().len(), 8);
        let g2 = enumerate_full_image(RepKind::Pi, 2).unwrap();
        // R has eigenvalues z and conj z, so <R> is cyclic of order 8.
        assert_eq!(g2.order, 8);
        assert_eq!(g2.kernel_order, 4);
        let g4 = enumerate_full_image(RepKind::Pi, 4).unwrap();
        assert_eq!(g4.order, 384);
        assert_eq!(g4.quotient_order, 24);
        assert!(g4.permutation_consistent && g4.kernel_is_pure_image);
    }

    #[test]
    fn pi_prime_pattern() {
        for n in 3..=6 {
            assert!(relation_pattern(RepKind::PiPrime, n)
                .unwrap()
                .matches(Nu::Plus));
            assert!(relation_pattern(RepKind::Pi, n).unwrap().matches(Nu::Minus));
            assert_eq!(
                enumerate_pure_image(RepKind::PiPrime, n).unwrap().len(),
                1 << n
            );
        }
        // Only one pure generator with square +I: the group is {I, g'_1}.
        assert_eq!(enumerate_pure_image(RepKind::PiPrime, 2).unwrap().len(), 2);
    }

    fn arb_elem(m: usize, nu: Nu) -> impl Strategy<Value = EsElement> {
        (any::<bool>(), 0u64..1 << m).prop_map(move |(s, a)| g(m, nu).element(s, a).unwrap())
    }

    proptest! {
        #[test]
        fn associative(
            (a, b, c) in (1usize..14, prop::bool::ANY).prop_flat_map(|(m, p)| {
                let nu = if p { Nu::Plus } else { Nu::Minus };
                (arb_elem(m, nu), arb_elem(m, nu), arb_elem(m, nu))
            })
        ) {
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * a.inverse(), g(a.rank(), a.nu()).identity());
        }
    }
}
