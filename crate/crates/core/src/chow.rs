//! Divisor classes and the quartic intersection form of `P^4` blown up at
//! points.
//!
//! A [`Basis`] names the generators of a divisor lattice. Classes only ever
//! combine with classes over the same basis; mixing lattices is an error.
//! On [`RingModel`] the quartic form is diagonal in the basis
//! `H, D0, ..., D(n-1)`: `H^4 = 1`, `Di^4 = -1`, and every monomial that mixes
//! two distinct generators vanishes. An optional formal symbol `E` (the
//! exceptional divisor of a surface blow-up) supports linear arithmetic only.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("basis mismatch: `{left}` vs `{right}`")]
    BasisMismatch { left: String, right: String },
    #[error("coefficient vector has length {got}, basis `{basis}` has {expected} elements")]
    LengthMismatch {
        basis: String,
        expected: usize,
        got: usize,
    },
    #[error("basis `{basis}` has no element named `{name}`")]
    UnknownElement { basis: String, name: String },
    #[error("no quartic data for `{0}`: it is a formal symbol with linear arithmetic only")]
    NoQuarticData(String),
    #[error("curve passes through {got} blown-up points but the model has only {available}")]
    TooManyPoints { got: usize, available: usize },
}

/// Ordered generator names of a divisor lattice, tagged with an identifier.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Basis {
    id: String,
    names: Vec<String>,
}

impl Basis {
    pub fn new(id: impl Into<String>, names: Vec<String>) -> Arc<Basis> {
        Arc::new(Basis {
            id: id.into(),
            names,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<usize, ChowError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ChowError::UnknownElement {
                basis: self.id.clone(),
                name: name.to_string(),
            })
    }
}

/// An exact rational combination of the generators of a [`Basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    basis: Arc<Basis>,
    coeffs: Vec<Rational>,
}

impl DivisorClass {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        DivisorClass {
            basis: Arc::clone(basis),
            coeffs: vec![Rational::zero(); basis.len()],
        }
    }

    pub fn from_coeffs(basis: &Arc<Basis>, coeffs: Vec<Rational>) -> Result<Self, ChowError> {
        if coeffs.len() != basis.len() {
            return Err(ChowError::LengthMismatch {
                basis: basis.id.clone(),
                expected: basis.len(),
                got: coeffs.len(),
            });
        }
        Ok(DivisorClass {
            basis: Arc::clone(basis),
            coeffs,
        })
    }

    pub fn from_ints(basis: &Arc<Basis>, coeffs: &[i64]) -> Result<Self, ChowError> {
        Self::from_coeffs(basis, coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// The generator called `name`.
    pub fn element(basis: &Arc<Basis>, name: &str) -> Result<Self, ChowError> {
        Self::from_terms(basis, &[(name, 1)])
    }

    /// Builds `sum c * name` from integer terms; repeated names accumulate.
    pub fn from_terms(basis: &Arc<Basis>, terms: &[(&str, i64)]) -> Result<Self, ChowError> {
        let mut class = Self::zero(basis);
        for &(name, c) in terms {
            let i = basis.index_of(name)?;
            class.coeffs[i] += Rational::from(c);
        }
        Ok(class)
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, name: &str) -> Result<Rational, ChowError> {
        Ok(self.coeffs[self.basis.index_of(name)?])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn same_lattice(&self, other: &DivisorClass) -> bool {
        Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis
    }

    fn check_lattice(&self, other: &DivisorClass) -> Result<(), ChowError> {
        if self.same_lattice(other) {
            Ok(())
        } else {
            Err(ChowError::BasisMismatch {
                left: self.basis.id.clone(),
                right: other.basis.id.clone(),
            })
        }
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass, ChowError> {
        self.check_lattice(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DivisorClass {
            basis: Arc::clone(&self.basis),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &DivisorClass) -> Result<DivisorClass, ChowError> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, factor: Rational) -> DivisorClass {
        DivisorClass {
            basis: Arc::clone(&self.basis),
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(&self.basis.names) {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if magnitude.is_one() {
                write!(f, "{name}")?;
            } else if magnitude.is_integer() {
                write!(f, "{magnitude}{name}")?;
            } else {
                write!(f, "({magnitude}){name}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// # Panics
/// Panics when the operands live on different lattices; use
/// [`DivisorClass::checked_add`] for a fallible version.
impl Add for &DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_add(rhs)
            .expect("adding classes from different lattices")
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        &self + &rhs
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self.checked_sub(rhs)
            .expect("subtracting classes from different lattices")
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        &self - &rhs
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(-Rational::one())
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(Rational::from(self))
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        rhs.scale(Rational::from(self))
    }
}

impl Mul<&DivisorClass> for Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

/// `P^4` blown up at `n_points` points, with basis `H, D0, ..., D(n-1)` and
/// optionally the formal surface-exceptional symbol `E` appended.
#[derive(Debug, Clone)]
pub struct RingModel {
    basis: Arc<Basis>,
    n_points: usize,
    has_surface_symbol: bool,
}

pub const SURFACE_SYMBOL: &str = "E";

impl RingModel {
    pub fn blowup_points(n_points: usize) -> Self {
        Self::build(n_points, false)
    }

    /// Same lattice as [`RingModel::blowup_points`] plus the formal symbol `E`.
    pub fn with_surface_symbol(n_points: usize) -> Self {
        Self::build(n_points, true)
    }

    fn build(n_points: usize, has_surface_symbol: bool) -> Self {
        let mut names = Vec::with_capacity(n_points + 2);
        names.push("H".to_string());
        names.extend((0..n_points).map(|i| format!("D{i}")));
        let id = if has_surface_symbol {
            names.push(SURFACE_SYMBOL.to_string());
            format!("P4+{n_points}pts+E")
        } else {
            format!("P4+{n_points}pts")
        };
        RingModel {
            basis: Basis::new(id, names),
            n_points,
            has_surface_symbol,
        }
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn has_surface_symbol(&self) -> bool {
        self.has_surface_symbol
    }

    pub fn hyperplane(&self) -> DivisorClass {
        let mut c = DivisorClass::zero(&self.basis);
        c.coeffs[0] = Rational::one();
        c
    }

    /// Exceptional divisor over the `i`-th point.
    ///
    /// # Panics
    /// Panics if `i >= n_points`.
    pub fn point_divisor(&self, i: usize) -> DivisorClass {
        assert!(i < self.n_points, "point index {i} out of range");
        let mut c = DivisorClass::zero(&self.basis);
        c.coeffs[1 + i] = Rational::one();
        c
    }

    /// `D0 + ... + D(n-1)`.
    pub fn point_divisor_sum(&self) -> DivisorClass {
        let mut c = DivisorClass::zero(&self.basis);
        for i in 0..self.n_points {
            c.coeffs[1 + i] = Rational::one();
        }
        c
    }

    pub fn surface_exceptional(&self) -> Option<DivisorClass> {
        self.has_surface_symbol.then(|| {
            let mut c = DivisorClass::zero(&self.basis);
            c.coeffs[1 + self.n_points] = Rational::one();
            c
        })
    }

    /// `5H - 3(D0 + ... + D(n-1))`.
    pub fn anticanonical(&self) -> DivisorClass {
        &(5 * &self.hyperplane()) - &(3 * &self.point_divisor_sum())
    }

    fn self_quartic(&self, index: usize) -> Option<Rational> {
        match index {
            0 => Some(Rational::one()),
            i if i <= self.n_points => Some(-Rational::one()),
            _ => None,
        }
    }

    /// Symmetric multilinear evaluation of the quartic form.
    pub fn quartic_degree(
        &self,
        c1: &DivisorClass,
        c2: &DivisorClass,
        c3: &DivisorClass,
        c4: &DivisorClass,
    ) -> Result<Rational, ChowError> {
        let probe = DivisorClass::zero(&self.basis);
        for c in [c1, c2, c3, c4] {
            probe.check_lattice(c)?;
        }
        let mut total = Rational::zero();
        for i in 0..self.basis.len() {
            let touched = [c1, c2, c3, c4].iter().any(|c| !c.coeffs[i].is_zero());
            let Some(top) = self.self_quartic(i) else {
                if touched {
                    return Err(ChowError::NoQuarticData(self.basis.names[i].clone()));
                }
                continue;
            };
            total += top * c1.coeffs[i] * c2.coeffs[i] * c3.coeffs[i] * c4.coeffs[i];
        }
        Ok(total)
    }

    pub fn top_power(&self, c: &DivisorClass) -> Result<Rational, ChowError> {
        self.quartic_degree(c, c, c, c)
    }

    /// [`curve_anticanonical_degree`] with the point count checked against
    /// this model.
    pub fn curve_degree(&self, degree: u32, mults: &[u32]) -> Result<i64, ChowError> {
        if mults.len() > self.n_points {
            return Err(ChowError::TooManyPoints {
                got: mults.len(),
                available: self.n_points,
            });
        }
        Ok(curve_anticanonical_degree(degree, mults))
    }
}

/// Degree of `-K` on the strict transform of a degree-`degree` curve in `P^4`
/// with the given multiplicities at blown-up points: `5d - 3 sum(m)`.
pub fn curve_anticanonical_degree(degree: u32, mults: &[u32]) -> i64 {
    5 * i64::from(degree) - 3 * mults.iter().map(|&m| i64::from(m)).sum::<i64>()
}

/// Degree together with the multiset of nonzero multiplicities, sorted
/// descending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CurveProfile {
    pub degree: u32,
    pub mults: Vec<u32>,
}

impl CurveProfile {
    pub fn new(degree: u32, mults: &[u32]) -> Self {
        let mut mults: Vec<u32> = mults.iter().copied().filter(|&m| m > 0).collect();
        mults.sort_unstable_by(|a, b| b.cmp(a));
        CurveProfile { degree, mults }
    }
}

/// Curve profiles allowed to have `-K`-degree `-1` (exceptional lines).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AllowedExceptional(pub BTreeSet<CurveProfile>);

impl Default for AllowedExceptional {
    /// Lines through two points and rational normal quartics through seven.
    fn default() -> Self {
        AllowedExceptional(BTreeSet::from([
            CurveProfile::new(1, &[1, 1]),
            CurveProfile::new(4, &[1; 7]),
        ]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CurveClass {
    Positive,
    ExceptionalLine,
    Violation,
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveClass::Positive => "Positive",
            CurveClass::ExceptionalLine => "ExceptionalLine",
            CurveClass::Violation => "Violation",
        })
    }
}

pub fn classify_curve(degree: u32, mults: &[u32], allowed: &AllowedExceptional) -> CurveClass {
    match curve_anticanonical_degree(degree, mults) {
        d if d >= 1 => CurveClass::Positive,
        -1 if allowed.0.contains(&CurveProfile::new(degree, mults)) => CurveClass::ExceptionalLine,
        _ => CurveClass::Violation,
    }
}

/// Anticanonical degrees of the two distinguished sections of a Hirzebruch
/// surface `F_e` sitting over a rational curve in a `P^1`-bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SectionDegrees {
    /// `-K . Gamma^-`, the negative section.
    pub negative: i64,
    /// `-K . Gamma^+`.
    pub positive: i64,
    /// Required parity of `det(E) . C`, i.e. `e mod 2`.
    pub det_parity: u8,
}

impl SectionDegrees {
    pub fn parity_consistent(&self, det_dot_curve: i64) -> bool {
        det_dot_curve.rem_euclid(2) == i64::from(self.det_parity)
    }
}

/// `c` is `-K_Y . C` on the base, `e` the Hirzebruch invariant of the
/// restricted bundle.
pub fn section_degrees(c: i64, e: u32) -> SectionDegrees {
    let e64 = i64::from(e);
    SectionDegrees {
        negative: c - e64,
        positive: c + e64,
        det_parity: (e % 2) as u8,
    }
}

/// `lhs == sum coefficient * class`, exactly and componentwise.
pub fn verify_linear_identity(
    lhs: &DivisorClass,
    terms: &[(Rational, DivisorClass)],
) -> Result<bool, ChowError> {
    let mut rhs = DivisorClass::zero(lhs.basis());
    for (c, class) in terms {
        rhs = rhs.checked_add(&class.scale(*c))?;
    }
    Ok(&rhs == lhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn p4_hyperplane() {
        let m = RingModel::blowup_points(0);
        assert_eq!(m.basis().names(), ["H"]);
        let h = m.hyperplane();
        assert_eq!(m.top_power(&h).unwrap(), q(1));
        assert_eq!(m.anticanonical(), 5 * &h);
    }

    #[test]
    fn one_point_anticanonical_degree() {
        let m = RingModel::blowup_points(1);
        assert_eq!(m.basis().names(), ["H", "D0"]);
        let k = m.anticanonical();
        assert_eq!(k, DivisorClass::from_ints(m.basis(), &[5, -3]).unwrap());
        assert_eq!(m.top_power(&k).unwrap(), q(544));
    }

    #[test]
    fn eight_points_before_flips() {
        let m = RingModel::blowup_points(8);
        assert_eq!(m.top_power(&m.anticanonical()).unwrap(), q(-23));
    }

    #[test]
    fn five_points() {
        let m = RingModel::blowup_points(5);
        let k = m.anticanonical();
        assert_eq!(k.to_string(), "5H - 3D0 - 3D1 - 3D2 - 3D3 - 3D4");
        assert_eq!(m.top_power(&k).unwrap(), q(220));
    }

    #[test]
    fn mixed_monomials_vanish() {
        let m = RingModel::blowup_points(3);
        let h = m.hyperplane();
        let d0 = m.point_divisor(0);
        assert_eq!(m.quartic_degree(&h, &h, &h, &d0).unwrap(), q(0));
        assert_eq!(m.quartic_degree(&d0, &d0, &h, &d0).unwrap(), q(0));
        assert_eq!(m.top_power(&d0).unwrap(), q(-1));
    }

    #[test]
    fn surface_symbol_rejected_in_quartic() {
        let m = RingModel::with_surface_symbol(2);
        let e = m.surface_exceptional().unwrap();
        let h = m.hyperplane();
        assert_eq!(
            m.quartic_degree(&h, &h, &h, &e),
            Err(ChowError::NoQuarticData("E".into()))
        );
        // classes that merely live on the extended lattice are fine
        assert_eq!(m.top_power(&m.anticanonical()).unwrap(), q(625 - 162));
    }

    #[test]
    fn cross_lattice_is_an_error() {
        let a = RingModel::blowup_points(2);
        let b = RingModel::blowup_points(3);
        assert!(matches!(
            a.hyperplane().checked_add(&b.hyperplane()),
            Err(ChowError::BasisMismatch { .. })
        ));
        assert!(a
            .quartic_degree(
                &a.hyperplane(),
                &a.hyperplane(),
                &a.hyperplane(),
                &b.hyperplane()
            )
            .is_err());
    }

    #[test]
    fn length_mismatch() {
        let m = RingModel::blowup_points(2);
        assert!(matches!(
            DivisorClass::from_ints(m.basis(), &[1, 2]),
            Err(ChowError::LengthMismatch {
                expected: 3,
                got: 2,
                ..
            })
        ));
    }

    #[test]
    fn curve_degrees() {
        assert_eq!(curve_anticanonical_degree(1, &[1, 1, 1]), -4);
        assert_eq!(curve_anticanonical_degree(1, &[1, 1]), -1);
        assert_eq!(curve_anticanonical_degree(4, &[1; 7]), -1);
        assert_eq!(curve_anticanonical_degree(3, &[1; 5]), 0);
        assert_eq!(curve_anticanonical_degree(2, &[]), 10);
        let m = RingModel::blowup_points(2);
        assert_eq!(
            m.curve_degree(1, &[1, 1, 1]),
            Err(ChowError::TooManyPoints {
                got: 3,
                available: 2
            })
        );
    }

    #[test]
    fn curve_classification() {
        let allowed = AllowedExceptional::default();
        assert_eq!(
            classify_curve(2, &[1, 1, 1, 1], &allowed),
            CurveClass::Violation
        );
        assert_eq!(
            classify_curve(1, &[1, 1], &allowed),
            CurveClass::ExceptionalLine
        );
        assert_eq!(
            classify_curve(1, &[0, 1, 0, 1], &allowed),
            CurveClass::ExceptionalLine
        );
        assert_eq!(classify_curve(1, &[], &allowed), CurveClass::Positive);
        assert_eq!(
            classify_curve(4, &[1; 7], &allowed),
            CurveClass::ExceptionalLine
        );
        // degree -1 outside the allowed set
        assert_eq!(
            classify_curve(2, &[2, 1, 1], &allowed),
            CurveClass::Violation
        );
        assert_eq!(classify_curve(3, &[1; 5], &allowed), CurveClass::Violation);
        let none = AllowedExceptional(BTreeSet::new());
        assert_eq!(classify_curve(1, &[1, 1], &none), CurveClass::Violation);
    }

    #[test]
    fn sections() {
        let s = section_degrees(4, 1);
        assert_eq!((s.negative, s.positive), (3, 5));
        assert!(s.parity_consistent(3) && !s.parity_consistent(2));
        let s = section_degrees(2, 0);
        assert_eq!((s.negative, s.positive, s.det_parity), (2, 2, 0));
        let s = section_degrees(1, 0);
        assert_eq!((s.negative, s.positive), (1, 1));
        assert!(s.parity_consistent(-4));
    }

    #[test]
    fn linear_identity() {
        let m = RingModel::with_surface_symbol(3);
        let k = &m.anticanonical() - &m.surface_exceptional().unwrap();
        assert!(verify_linear_identity(&k, &[(q(1), k.clone())]).unwrap());
        assert!(!verify_linear_identity(&k, &[(q(2), k.clone())]).unwrap());
        let other = RingModel::with_surface_symbol(2);
        assert!(verify_linear_identity(&k, &[(q(1), other.hyperplane())]).is_err());
    }

    #[test]
    fn display() {
        let m = RingModel::with_surface_symbol(1);
        let c =
            DivisorClass::from_coeffs(m.basis(), vec![q(0), Rational::new(-1, 2), q(2)]).unwrap();
        assert_eq!(c.to_string(), "-(1/2)D0 + 2E");
        assert_eq!(DivisorClass::zero(m.basis()).to_string(), "0");
    }
}
