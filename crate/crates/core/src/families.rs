//! The concrete constructions: the Fano model `W` of `P^4` blown up at
//! points, and the families A, B, C, E of blow-ups and blow-downs of `W`
//! along surfaces. Also the anticanonical decomposition certificates and the
//! general-position audit.
//!
//! Parameters follow the tables: `W` at `r` blows up `r + 1` points, and
//! every surface family at `r` starts from `W` at the same `r`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::chow::{
    classify_curve, curve_anticanonical_degree, verify_linear_identity, AllowedExceptional,
    ChowError, CurveClass, DivisorClass, RingModel,
};
use crate::invariants::{p4_record, FourfoldRecord, InvariantError};
use crate::surfaces::{NormalBundle, SurfaceData, SurfaceError, SurfaceModel};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FamilyKind {
    /// Fano model of `P^4` blown up at `r + 1` general points.
    W,
    /// Blow-up of `W` along the transform of a cubic scroll.
    A,
    /// Blow-up of `W` along the transform of a sextic K3 surface.
    B,
    /// Blow-up of `W` along the transform of a quadric surface.
    C,
    /// Blow-down of family A along the second ruled divisor.
    E,
    /// Blow-up of `W` along the transform of a cone over a twisted cubic.
    Cone,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::W => "W",
            FamilyKind::A => "A",
            FamilyKind::B => "B",
            FamilyKind::C => "C",
            FamilyKind::E => "E",
            FamilyKind::Cone => "cone",
        })
    }
}

impl FromStr for FamilyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "W" | "w" => Ok(FamilyKind::W),
            "A" | "a" => Ok(FamilyKind::A),
            "B" | "b" => Ok(FamilyKind::B),
            "C" | "c" => Ok(FamilyKind::C),
            "E" | "e" => Ok(FamilyKind::E),
            "cone" => Ok(FamilyKind::Cone),
            other => Err(format!(
                "unknown family `{other}` (expected W, A, B, C, E or cone)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family {family} is not defined for r = {r}: {reason}")]
    OutOfRange {
        family: FamilyKind,
        r: u32,
        reason: &'static str,
    },
    #[error("unsupported: open question: {question}")]
    Unsupported {
        family: FamilyKind,
        r: u32,
        question: &'static str,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Chow(#[from] ChowError),
}

/// A constructed family member: its invariants, the base `W` it was built
/// from, and the surface data used (absent for `W` itself).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: FamilyKind,
    pub r: u32,
    pub record: FourfoldRecord,
    pub surface: Option<SurfaceData>,
    pub base: FourfoldRecord,
}

const OPEN_A: &str = "whether the scroll blow-up stays Fano for r = 5, 6 is open";
const OPEN_E: &str =
    "whether the small modification to a Fano 4-fold exists for r = 5, 6, 7 is open";
const OPEN_CONE: &str =
    "whether the blow-up along a cone over a twisted cubic is a smooth Fano 4-fold is open";

fn check_range(family: FamilyKind, r: u32) -> Result<(), FamilyError> {
    let out = |reason| Err(FamilyError::OutOfRange { family, r, reason });
    match family {
        FamilyKind::W if r > 7 => out("P^4 blown up at 9 or more points is not a Mori dream space"),
        FamilyKind::A if (5..=6).contains(&r) => Err(FamilyError::Unsupported {
            family,
            r,
            question: OPEN_A,
        }),
        FamilyKind::A if r > 6 => out("not Fano once rho > 9"),
        FamilyKind::B if r > 4 => out("Fano exactly for r in 0..=4"),
        FamilyKind::C if r > 2 => out("Fano exactly for r in 0..=2"),
        FamilyKind::E if (5..=7).contains(&r) => Err(FamilyError::Unsupported {
            family,
            r,
            question: OPEN_E,
        }),
        FamilyKind::E if r > 7 => out("rho would exceed the bound 9"),
        FamilyKind::Cone => Err(FamilyError::Unsupported {
            family,
            r,
            question: OPEN_CONE,
        }),
        _ => Ok(()),
    }
}

/// Exceptional curves flipped on the way from `Bl_n P^4` to its Fano
/// model: the lines through two of the points, plus the rational normal
/// quartics through seven of them.
pub fn flipped_curves(n_points: u32) -> u32 {
    let lines = n_points * n_points.saturating_sub(1) / 2;
    let quartics = if n_points >= 7 {
        binomial(n_points, 7)
    } else {
        0
    };
    lines + quartics
}

fn binomial(n: u32, k: u32) -> u32 {
    (0..k).fold(1u64, |acc, i| acc * u64::from(n - i) / u64::from(i + 1)) as u32
}

/// Fano model of `P^4` blown up at `n_points` general points, `1 <= n <= 8`.
pub fn fano_model_w(n_points: u32) -> Result<FourfoldRecord, FamilyError> {
    if !(1..=8).contains(&n_points) {
        return Err(FamilyError::OutOfRange {
            family: FamilyKind::W,
            r: n_points.wrapping_sub(1),
            reason: "the Fano model needs between 1 and 8 points",
        });
    }
    let mut rec = p4_record();
    for _ in 0..n_points {
        rec = rec.blow_up_point();
    }
    Ok(rec.flip_lines(flipped_curves(n_points)))
}

fn usize_of(r: u32) -> usize {
    usize::try_from(r).expect("u32 fits in usize")
}

/// Transform of a cubic scroll `F_1` through `q0..qr`: `Bl_(r+2) P^2`, with
/// `e1` the curve of the scroll and `e2..e(r+2)` over the points. The
/// normal bundle is a non-split extension, so `c2` is supplied in closed form.
pub fn family_a_surface(r: u32) -> Result<SurfaceData, FamilyError> {
    let ru = usize_of(r);
    let s = SurfaceModel::del_pezzo(ru + 2);
    let hyperplane = s.class(&[("h", 2), ("e1", -1)])?;
    let mut anti_kw = 5 * &hyperplane;
    for i in 0..=ru {
        anti_kw = &anti_kw - &(3 * &s.class(&[(&format!("e{}", i + 2), 1)])?);
    }
    let c2 = 8 - i64::from(r);
    Ok(s.surface_data(&-anti_kw, &NormalBundle::SecondChern(c2))?)
}

/// Transform of a sextic K3 through `q0..qr`, a complete intersection of a
/// quadric and a cubic singular at the points.
pub fn family_b_surface(r: u32) -> Result<SurfaceData, FamilyError> {
    let ru = usize_of(r);
    let s = SurfaceModel::k3_sextic(ru);
    let curves = (0..=ru).try_fold(DivisorClass::zero(s.basis()), |acc, i| {
        s.class(&[(&format!("C{i}"), 1)]).map(|c| &acc + &c)
    })?;
    let h = s.class(&[("h", 1)])?;
    let anti_kw = &(5 * &h) - &(3 * &curves);
    let quadric = &(2 * &h) - &curves;
    let cubic = &(3 * &h) - &(2 * &curves);
    Ok(s.surface_data(&-anti_kw, &NormalBundle::Split(quadric, cubic))?)
}

/// Lattice of the quadric surface `S` in family C, together with the
/// restrictions `J|S` and `T|S` of the section `J` and the ruled divisor `T`.
///
/// For `r >= 1` the surface is `Bl_(r+1) P^2` with basis `h, e0..er`, and
/// `(H_Y - sum G_i)|S` is read off the dictionary `H_Y|S = 2h - e0 - e1`,
/// `G1|S = h - e0 - e1`, `Gi|S = ei` for `i >= 2`. For `r = 0` it is
/// `P^1 x P^1` and `J|S` is the hyperplane class `f1 + f2`.
pub fn family_c_lattice(r: u32) -> Result<(SurfaceModel, DivisorClass, DivisorClass), FamilyError> {
    if r == 0 {
        let s = SurfaceModel::quadric();
        let j = s.class(&[("f1", 1), ("f2", 1)])?;
        let t = -s.canonical();
        return Ok((s, j, t));
    }
    let ru = usize_of(r);
    let s = SurfaceModel::del_pezzo_indexed(ru + 1, 0);
    let hy = s.class(&[("h", 2), ("e0", -1), ("e1", -1)])?;
    let mut j = &hy - &s.class(&[("h", 1), ("e0", -1), ("e1", -1)])?;
    for i in 2..=ru {
        j = &j - &s.class(&[(&format!("e{i}"), 1)])?;
    }
    let t = -s.canonical();
    Ok((s, j, t))
}

/// `S` is the complete intersection of `J` and `T`, and
/// `-K_W ~ J + D0 + 2T` with `D0` disjoint from `S`.
pub fn family_c_surface(r: u32) -> Result<SurfaceData, FamilyError> {
    let (s, j, t) = family_c_lattice(r)?;
    let anti_kw = &j + &(2 * &t);
    Ok(s.surface_data(&-anti_kw, &NormalBundle::Split(j, t))?)
}

/// Surface blown down from family A to reach family E; a del Pezzo surface
/// of Picard rank `r + 2`.
pub fn family_e_surface(r: u32) -> SurfaceData {
    let r = i64::from(r);
    SurfaceData::from_array([8 - r, 16 - 2 * r, 30 - 4 * r, 1, 1, r + 2, 0, 0])
}

pub fn family_a(r: u32) -> Result<FamilySpec, FamilyError> {
    check_range(FamilyKind::A, r)?;
    blow_up_family(FamilyKind::A, r, family_a_surface(r)?)
}

pub fn family_b(r: u32) -> Result<FamilySpec, FamilyError> {
    check_range(FamilyKind::B, r)?;
    blow_up_family(FamilyKind::B, r, family_b_surface(r)?)
}

pub fn family_c(r: u32) -> Result<FamilySpec, FamilyError> {
    check_range(FamilyKind::C, r)?;
    blow_up_family(FamilyKind::C, r, family_c_surface(r)?)
}

pub fn family_e(r: u32) -> Result<FamilySpec, FamilyError> {
    check_range(FamilyKind::E, r)?;
    let a = family_a(r)?;
    let surface = family_e_surface(r);
    Ok(FamilySpec {
        family: FamilyKind::E,
        r,
        record: a.record.blow_down_surface(&surface)?,
        surface: Some(surface),
        base: a.base,
    })
}

fn blow_up_family(
    family: FamilyKind,
    r: u32,
    surface: SurfaceData,
) -> Result<FamilySpec, FamilyError> {
    let base = fano_model_w(r + 1)?;
    Ok(FamilySpec {
        family,
        r,
        record: base.blow_up_surface(&surface)?,
        surface: Some(surface),
        base,
    })
}

pub fn build(family: FamilyKind, r: u32) -> Result<FamilySpec, FamilyError> {
    check_range(family, r)?;
    match family {
        FamilyKind::W => {
            let record = fano_model_w(r + 1)?;
            Ok(FamilySpec {
                family,
                r,
                record,
                surface: None,
                base: record,
            })
        }
        FamilyKind::A => family_a(r),
        FamilyKind::B => family_b(r),
        FamilyKind::C => family_c(r),
        FamilyKind::E => family_e(r),
        FamilyKind::Cone => unreachable!("rejected by check_range"),
    }
}

/// `multiple * (-K_X) = sum coefficient * divisor`, on the lattice
/// `H, D0..Dr, E` of the blow-up.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub family: FamilyKind,
    pub r: u32,
    pub model: RingModel,
    pub multiple: Rational,
    pub terms: Vec<DecompositionTerm>,
}

#[derive(Debug, Clone)]
pub struct DecompositionTerm {
    pub name: String,
    pub coefficient: Rational,
    pub class: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateReport {
    pub family: FamilyKind,
    pub r: u32,
    pub identity: String,
    pub identity_ok: bool,
    pub coefficients_nonneg: bool,
    #[serde(rename = "K4")]
    pub k4: i64,
    #[serde(rename = "K4_positive")]
    pub k4_positive: bool,
}

impl CertificateReport {
    pub fn all_ok(&self) -> bool {
        self.identity_ok && self.coefficients_nonneg && self.k4_positive
    }
}

impl Decomposition {
    pub fn for_family(family: FamilyKind, r: u32) -> Result<Self, FamilyError> {
        check_range(family, r)?;
        let ru = usize_of(r);
        let model = RingModel::with_surface_symbol(ru + 1);
        let h = model.hyperplane();
        let e = model.surface_exceptional().expect("lattice carries E");
        let dsum = model.point_divisor_sum();
        let term = |name: String, c: i64, class: DivisorClass| DecompositionTerm {
            name,
            coefficient: Rational::from(c),
            class,
        };
        let ri = i64::from(r);
        let (multiple, terms) = match family {
            FamilyKind::A => {
                // T_i: transform of the quadric cone over the scroll with vertex q_i
                let mut terms = vec![term("H".into(), 4 - ri, h.clone())];
                for i in 0..=ru {
                    let t = &(&(&(2 * &h) - &dsum) - &model.point_divisor(i)) - &e;
                    terms.push(term(format!("T{i}"), 3, t));
                }
                terms.push(term("E".into(), 2 * ri + 1, e.clone()));
                (ri + 2, terms)
            }
            FamilyKind::B if r == 0 => {
                // the general identity has E-coefficient r - 1 < 0 here
                let t0 = &(&(4 * &h) - &(4 * &model.point_divisor(0))) - &e;
                let terms = vec![
                    term("H".into(), 1, h.clone()),
                    term("T0".into(), 1, t0),
                    term("D0".into(), 1, model.point_divisor(0)),
                ];
                (1, terms)
            }
            FamilyKind::B => {
                // T_i: transform of the cone over the K3 with vertex q_i
                let mut terms = vec![term("H".into(), 2 * (4 - ri), h.clone())];
                for i in 0..=ru {
                    let t = &(&(&(4 * &h) - &(2 * &dsum)) - &(2 * &model.point_divisor(i))) - &e;
                    terms.push(term(format!("T{i}"), 3, t));
                }
                terms.push(term("E".into(), ri - 1, e.clone()));
                (2 * (ri + 2), terms)
            }
            FamilyKind::C => {
                let rest = (1..=ru).fold(DivisorClass::zero(model.basis()), |acc, i| {
                    &acc + &model.point_divisor(i)
                });
                let d0 = model.point_divisor(0);
                let j = &(&h - &rest) - &e;
                let t = &(&(&(2 * &h) - &(2 * &d0)) - &rest) - &e;
                let terms = vec![
                    term("J'".into(), 1, j),
                    term("D0'".into(), 1, d0),
                    term("T".into(), 2, t),
                    term("E".into(), 2, e.clone()),
                ];
                (1, terms)
            }
            FamilyKind::W | FamilyKind::E | FamilyKind::Cone => {
                return Err(FamilyError::OutOfRange {
                    family,
                    r,
                    reason: "decomposition certificates exist for families A, B and C",
                })
            }
        };
        Ok(Decomposition {
            family,
            r,
            model,
            multiple: Rational::from(multiple),
            terms,
        })
    }

    /// `-K_X = 5H - 3 sum D_i - E`.
    pub fn anticanonical(&self) -> DivisorClass {
        &self.model.anticanonical() - &self.model.surface_exceptional().expect("lattice carries E")
    }

    pub fn describe(&self) -> String {
        let rhs: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("{}*{}", t.coefficient, t.name))
            .collect();
        format!("{}*(-K) = {}", self.multiple, rhs.join(" + "))
    }

    pub fn check(&self, k4: i64) -> Result<CertificateReport, FamilyError> {
        let lhs = self.anticanonical().scale(self.multiple);
        let pairs: Vec<(Rational, DivisorClass)> = self
            .terms
            .iter()
            .map(|t| (t.coefficient, t.class.clone()))
            .collect();
        Ok(CertificateReport {
            family: self.family,
            r: self.r,
            identity: self.describe(),
            identity_ok: verify_linear_identity(&lhs, &pairs)?,
            coefficients_nonneg: self
                .terms
                .iter()
                .all(|t| t.coefficient >= Rational::from(0)),
            k4,
            k4_positive: k4 > 0,
        })
    }
}

pub fn decomposition_certificate(
    family: FamilyKind,
    r: u32,
) -> Result<CertificateReport, FamilyError> {
    let decomposition = Decomposition::for_family(family, r)?;
    let spec = build(family, r)?;
    decomposition.check(spec.record.k4)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub curve: &'static str,
    pub degree: u32,
    pub mults: Vec<u32>,
    pub anticanonical_degree: i64,
    pub class: CurveClass,
}

/// Special curves through the blown-up points and how `-K` sees them.
/// Only configurations that fit in `n_points` points are listed.
pub fn general_position_audit(n_points: u32) -> Result<Vec<AuditEntry>, FamilyError> {
    if !(1..=8).contains(&n_points) {
        return Err(FamilyError::OutOfRange {
            family: FamilyKind::W,
            r: n_points.wrapping_sub(1),
            reason: "the audit covers 1 to 8 points",
        });
    }
    const CONFIGS: [(&str, u32, usize); 5] = [
        ("line through 2 points", 1, 2),
        ("line through 3 points", 1, 3),
        ("conic through 4 points", 2, 4),
        ("twisted cubic through 5 points in a hyperplane", 3, 5),
        ("rational normal quartic through 7 points", 4, 7),
    ];
    let allowed = AllowedExceptional::default();
    let n = usize_of(n_points);
    Ok(CONFIGS
        .iter()
        .filter(|(_, _, k)| *k <= n)
        .map(|&(curve, degree, k)| {
            let mults = vec![1; k];
            AuditEntry {
                curve,
                degree,
                anticanonical_degree: curve_anticanonical_degree(degree, &mults),
                class: classify_curve(degree, &mults, &allowed),
                mults,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_counts() {
        let counts: Vec<u32> = (1..=8).map(flipped_curves).collect();
        assert_eq!(counts, [0, 1, 3, 6, 10, 15, 22, 36]);
    }

    #[test]
    fn w_rows() {
        let w1 = fano_model_w(1).unwrap();
        assert_eq!(
            (w1.rho, w1.k4, w1.k2c2, w1.h22, w1.b3, w1.chi_mk, w1.chi_t),
            (2, 544, 232, 2, 0, 111, 20)
        );
        let w7 = fano_model_w(7).unwrap();
        assert_eq!(
            (w7.rho, w7.k4, w7.k2c2, w7.h22, w7.chi_mk, w7.chi_t),
            (8, 80, 80, 30, 21, -4)
        );
        let w8 = fano_model_w(8).unwrap();
        assert_eq!(
            (w8.rho, w8.k4, w8.k2c2, w8.h22, w8.chi_mk, w8.chi_t),
            (9, 13, 34, 45, 6, -8)
        );
        assert!(fano_model_w(0).is_err());
        assert!(fano_model_w(9).is_err());
    }

    #[test]
    fn surface_data_closed_forms() {
        for r in 0..=4u32 {
            let ri = i64::from(r);
            assert_eq!(
                family_a_surface(r).unwrap(),
                SurfaceData::from_array([
                    7 - ri,
                    22 - 3 * ri,
                    66 - 9 * ri,
                    8 - ri,
                    1,
                    ri + 3,
                    0,
                    0
                ])
            );
            assert_eq!(
                family_b_surface(r).unwrap(),
                SurfaceData::from_array([0, 0, 132 - 18 * ri, 32 - 4 * ri, 2, 20, 1, 0])
            );
        }
        for r in 0..=2u32 {
            let ri = i64::from(r);
            assert_eq!(
                family_c_surface(r).unwrap(),
                SurfaceData::from_array([
                    8 - ri,
                    20 - 3 * ri,
                    50 - 9 * ri,
                    4 - ri,
                    1,
                    ri + 2,
                    0,
                    0
                ])
            );
        }
    }

    #[test]
    fn family_c_r2_pieces() {
        let (s, j, t) = family_c_lattice(2).unwrap();
        assert_eq!(j.to_string(), "h - e2");
        assert_eq!(s.intersect(&j, &t).unwrap(), Rational::from(2));
    }

    #[test]
    fn family_e_split_normal_bundle() {
        // N = O(2h - e0 - e2 - ... - er) + O(h - e0) on Bl_(r+1) P^2
        for r in 1..=4usize {
            let s = SurfaceModel::del_pezzo_indexed(r + 1, 0);
            let mut n1 = s.class(&[("h", 2), ("e0", -1)]).unwrap();
            for i in 2..=r {
                n1 = &n1 - &s.class(&[(&format!("e{i}"), 1)]).unwrap();
            }
            let n2 = s.class(&[("h", 1), ("e0", -1)]).unwrap();
            let kz = &(s.canonical() - &n1) - &n2;
            let data = s.surface_data(&kz, &NormalBundle::Split(n1, n2)).unwrap();
            assert_eq!(data, family_e_surface(r as u32));
        }
    }

    #[test]
    fn family_examples() {
        let a0 = family_a(0).unwrap().record;
        assert_eq!(
            (a0.k4, a0.k2c2, a0.h22, a0.chi_mk, a0.chi_t),
            (303, 174, 5, 66, 4)
        );
        let a2 = family_a(2).unwrap().record;
        assert_eq!(
            (a2.k4, a2.k2c2, a2.h22, a2.chi_mk, a2.chi_t),
            (210, 144, 12, 48, 0)
        );
        let b4 = family_b(4).unwrap().record;
        assert_eq!(
            (b4.k4, b4.k2c2, b4.h22, b4.chi_mk, b4.chi_t),
            (66, 84, 36, 19, -14)
        );
        let c1 = family_c(1).unwrap().record;
        assert_eq!(
            (c1.k4, c1.k2c2, c1.h22, c1.chi_mk, c1.chi_t),
            (303, 174, 7, 66, 5)
        );
        let e3 = family_e(3).unwrap().record;
        assert_eq!(
            (e3.k4, e3.k2c2, e3.h22, e3.chi_mk, e3.chi_t),
            (243, 150, 12, 54, 3)
        );
    }

    #[test]
    fn ranges_and_open_questions() {
        assert!(matches!(family_a(5), Err(FamilyError::Unsupported { .. })));
        assert!(matches!(family_a(6), Err(FamilyError::Unsupported { .. })));
        assert!(matches!(family_a(7), Err(FamilyError::OutOfRange { .. })));
        assert!(matches!(family_b(5), Err(FamilyError::OutOfRange { .. })));
        assert!(matches!(family_c(3), Err(FamilyError::OutOfRange { .. })));
        assert!(matches!(family_e(5), Err(FamilyError::Unsupported { .. })));
        assert!(matches!(
            build(FamilyKind::Cone, 0),
            Err(FamilyError::Unsupported { .. })
        ));
        assert!(matches!(
            build(FamilyKind::W, 8),
            Err(FamilyError::OutOfRange { .. })
        ));
    }

    #[test]
    fn rho_formulas() {
        for r in 0..=4 {
            assert_eq!(family_a(r).unwrap().record.rho, i64::from(r) + 3);
            assert_eq!(family_b(r).unwrap().record.rho, i64::from(r) + 3);
            assert_eq!(family_e(r).unwrap().record.rho, i64::from(r) + 2);
        }
        for r in 0..=2 {
            assert_eq!(family_c(r).unwrap().record.rho, i64::from(r) + 3);
        }
        for r in 0..=7 {
            assert_eq!(
                build(FamilyKind::W, r).unwrap().record.rho,
                i64::from(r) + 2
            );
        }
    }

    #[test]
    fn certificates() {
        let a4 = Decomposition::for_family(FamilyKind::A, 4).unwrap();
        assert_eq!(a4.terms[0].coefficient, Rational::from(0));
        assert_eq!(a4.multiple, Rational::from(6));
        assert!(decomposition_certificate(FamilyKind::A, 4)
            .unwrap()
            .all_ok());
        assert!(decomposition_certificate(FamilyKind::C, 2)
            .unwrap()
            .all_ok());
        assert!(decomposition_certificate(FamilyKind::B, 0)
            .unwrap()
            .all_ok());
        assert!(Decomposition::for_family(FamilyKind::E, 0).is_err());
    }

    #[test]
    fn perturbed_certificate_fails() {
        let mut d = Decomposition::for_family(FamilyKind::A, 0).unwrap();
        let t0 = d.terms.iter_mut().find(|t| t.name == "T0").unwrap();
        t0.coefficient = Rational::from(4);
        let report = d.check(303).unwrap();
        assert!(!report.identity_ok);
        assert!(!report.all_ok());
    }

    #[test]
    fn audit() {
        let a3 = general_position_audit(3).unwrap();
        let line3 = a3.iter().find(|e| e.mults.len() == 3).unwrap();
        assert_eq!(
            (line3.anticanonical_degree, line3.class),
            (-4, CurveClass::Violation)
        );
        let a2 = general_position_audit(2).unwrap();
        assert_eq!(a2.len(), 1);
        assert_eq!(
            (a2[0].anticanonical_degree, a2[0].class),
            (-1, CurveClass::ExceptionalLine)
        );
        let a7 = general_position_audit(7).unwrap();
        let quartic = a7.last().unwrap();
        assert_eq!((quartic.degree, quartic.anticanonical_degree), (4, -1));
        assert_eq!(quartic.class, CurveClass::ExceptionalLine);
        assert!(general_position_audit(0).is_err());
    }
}
