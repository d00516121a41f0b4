//! Intersection lattices of the surfaces that get blown up, and extraction
//! of the numbers the surface blow-up formulas need.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chow::{Basis, ChowError, DivisorClass};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("gram matrix must be {n}x{n} for basis `{basis}`")]
    GramShape { basis: String, n: usize },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    AsymmetricGram { row: usize, col: usize },
    #[error("normal pieces violate adjunction n1 + n2 = K_S - K_W|S; residual {residual}")]
    AdjunctionViolation { residual: String },
    #[error("{quantity} = {value} is not an integer")]
    NonIntegral {
        quantity: &'static str,
        value: String,
    },
}

/// A smooth surface: divisor lattice with its intersection form, canonical
/// class and the Hodge data the blow-up formulas consume.
#[derive(Debug, Clone)]
pub struct SurfaceModel {
    basis: Arc<Basis>,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
    chi_o: i64,
    h11: i64,
    h20: i64,
    b1: i64,
}

impl SurfaceModel {
    pub fn new(
        basis: Arc<Basis>,
        gram: Vec<Vec<i64>>,
        canonical_coeffs: &[i64],
        chi_o: i64,
        hodge: [i64; 3],
    ) -> Result<Self, SurfaceError> {
        let n = basis.len();
        if gram.len() != n || gram.iter().any(|row| row.len() != n) {
            return Err(SurfaceError::GramShape {
                basis: basis.id().to_string(),
                n,
            });
        }
        for (row, entries) in gram.iter().enumerate() {
            for (col, &v) in entries.iter().enumerate().skip(row + 1) {
                if v != gram[col][row] {
                    return Err(SurfaceError::AsymmetricGram { row, col });
                }
            }
        }
        let canonical = DivisorClass::from_ints(&basis, canonical_coeffs)?;
        let [h11, h20, b1] = hodge;
        Ok(SurfaceModel {
            basis,
            gram,
            canonical,
            chi_o,
            h11,
            h20,
            b1,
        })
    }

    /// `Bl_k P^2` with basis `h, e1, ..., ek`.
    pub fn del_pezzo(k: usize) -> Self {
        Self::del_pezzo_indexed(k, 1)
    }

    /// `Bl_k P^2` with exceptional curves numbered from `first`.
    pub fn del_pezzo_indexed(k: usize, first: usize) -> Self {
        let mut names = vec!["h".to_string()];
        names.extend((first..first + k).map(|i| format!("e{i}")));
        let basis = Basis::new(format!("Bl{k}P2[e{first}..]"), names);
        let n = k + 1;
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i, j) {
                        (0, 0) => 1,
                        (i, j) if i == j => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        let mut canonical = vec![1; n];
        canonical[0] = -3;
        let rank = i64::try_from(n).expect("lattice rank fits in i64");
        Self::new(basis, gram, &canonical, 1, [rank, 0, 0]).expect("del Pezzo preset is valid")
    }

    /// `P^1 x P^1` with the two rulings `f1, f2`.
    pub fn quadric() -> Self {
        let basis = Basis::new("P1xP1", vec!["f1".into(), "f2".into()]);
        Self::new(basis, vec![vec![0, 1], vec![1, 0]], &[-2, -2], 1, [2, 0, 0])
            .expect("quadric preset is valid")
    }

    /// K3 surface with a degree-6 polarization `h` and disjoint `(-2)`-curves
    /// `C0, ..., Cr` orthogonal to `h`. Only the sublattice they span is kept.
    pub fn k3_sextic(r: usize) -> Self {
        let mut names = vec!["h".to_string()];
        names.extend((0..=r).map(|i| format!("C{i}")));
        let basis = Basis::new(format!("K3sextic+{}C", r + 1), names);
        let n = r + 2;
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match (i, j) {
                        (0, 0) => 6,
                        (i, j) if i == j => -2,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self::new(basis, gram, &vec![0; n], 2, [20, 1, 0]).expect("K3 preset is valid")
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn class(&self, terms: &[(&str, i64)]) -> Result<DivisorClass, ChowError> {
        DivisorClass::from_terms(&self.basis, terms)
    }

    /// `a^T G b`.
    pub fn intersect(&self, a: &DivisorClass, b: &DivisorClass) -> Result<Rational, ChowError> {
        let own = DivisorClass::zero(&self.basis);
        for c in [a, b] {
            if !own.same_lattice(c) {
                return Err(ChowError::BasisMismatch {
                    left: self.basis.id().to_string(),
                    right: c.basis().id().to_string(),
                });
            }
        }
        let mut total = Rational::zero();
        for (i, ai) in a.coeffs().iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs().iter().enumerate() {
                total += ai * bj * Rational::from(self.gram[i][j]);
            }
        }
        Ok(total)
    }

    /// `n1 + n2 - (K_S - K_W|S)`; zero exactly when adjunction holds.
    pub fn adjunction_residual(
        &self,
        kw_restr: &DivisorClass,
        n1: &DivisorClass,
        n2: &DivisorClass,
    ) -> Result<DivisorClass, ChowError> {
        let det = n1.checked_add(n2)?;
        det.checked_sub(&self.canonical.checked_sub(kw_restr)?)
    }

    pub fn surface_data(
        &self,
        kw_restr: &DivisorClass,
        normal: &NormalBundle,
    ) -> Result<SurfaceData, SurfaceError> {
        let k = &self.canonical;
        let c2n = match normal {
            NormalBundle::Split(n1, n2) => {
                let residual = self.adjunction_residual(kw_restr, n1, n2)?;
                if !residual.is_zero() {
                    return Err(SurfaceError::AdjunctionViolation {
                        residual: residual.to_string(),
                    });
                }
                integral("c2N", self.intersect(n1, n2)?)?
            }
            NormalBundle::SecondChern(c2) => *c2,
        };
        Ok(SurfaceData {
            ks2: integral("KS2", self.intersect(k, k)?)?,
            ks_dot_kw: integral("KS_dot_KW", self.intersect(k, kw_restr)?)?,
            kw2: integral("KW2", self.intersect(kw_restr, kw_restr)?)?,
            c2n,
            chi_os: self.chi_o,
            h11s: self.h11,
            h20s: self.h20,
            b1s: self.b1,
        })
    }
}

fn integral(quantity: &'static str, value: Rational) -> Result<i64, SurfaceError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(SurfaceError::NonIntegral {
            quantity,
            value: value.to_string(),
        })
    }
}

/// How the normal bundle of the surface is known.
#[derive(Debug, Clone)]
pub enum NormalBundle {
    /// A direct sum of two line bundles, given by their classes.
    Split(DivisorClass, DivisorClass),
    /// Only `c2` is known (non-split extensions).
    SecondChern(i64),
}

/// The numbers a surface blow-up consumes: `K_S^2`, `K_S . K_W|S`,
/// `(K_W|S)^2`, `c2(N_S/W)`, `chi(O_S)` and the surface Hodge numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceData {
    #[serde(rename = "KS2")]
    pub ks2: i64,
    #[serde(rename = "KS_dot_KW")]
    pub ks_dot_kw: i64,
    #[serde(rename = "KW2")]
    pub kw2: i64,
    #[serde(rename = "c2N")]
    pub c2n: i64,
    #[serde(rename = "chiOS")]
    pub chi_os: i64,
    #[serde(rename = "h11S")]
    pub h11s: i64,
    #[serde(rename = "h20S")]
    pub h20s: i64,
    #[serde(rename = "b1S")]
    pub b1s: i64,
}

impl SurfaceData {
    /// Field names in their canonical order, as used in tower files.
    pub const FIELDS: [&'static str; 8] = [
        "KS2",
        "KS_dot_KW",
        "KW2",
        "c2N",
        "chiOS",
        "h11S",
        "h20S",
        "b1S",
    ];

    /// From `[KS2, KS_dot_KW, KW2, c2N, chiOS, h11S, h20S, b1S]`.
    pub const fn from_array(v: [i64; 8]) -> Self {
        SurfaceData {
            ks2: v[0],
            ks_dot_kw: v[1],
            kw2: v[2],
            c2n: v[3],
            chi_os: v[4],
            h11s: v[5],
            h20s: v[6],
            b1s: v[7],
        }
    }

    pub const fn to_array(&self) -> [i64; 8] {
        [
            self.ks2,
            self.ks_dot_kw,
            self.kw2,
            self.c2n,
            self.chi_os,
            self.h11s,
            self.h20s,
            self.b1s,
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn del_pezzo_preset() {
        let s = SurfaceModel::del_pezzo(2);
        let k = s.canonical();
        assert_eq!(k.to_string(), "-3h + e1 + e2");
        assert_eq!(s.intersect(k, k).unwrap(), q(7));
        let h = s.class(&[("h", 1)]).unwrap();
        assert!(SurfaceModel::del_pezzo(0).intersect(&h, &h).is_err());
        let p2 = SurfaceModel::del_pezzo(0);
        let h0 = p2.class(&[("h", 1)]).unwrap();
        assert_eq!(p2.intersect(&h0, &h0).unwrap(), q(1));
        for k in 0..=8 {
            let s = SurfaceModel::del_pezzo(k);
            let kk = s.intersect(s.canonical(), s.canonical()).unwrap();
            assert_eq!(kk, q(9 - k as i64));
        }
    }

    #[test]
    fn k3_preset() {
        let s = SurfaceModel::k3_sextic(0);
        let c = s.class(&[("h", 5), ("C0", -3)]).unwrap();
        assert_eq!(s.intersect(&c, &c).unwrap(), q(132));
        assert!(s.canonical().is_zero());
        assert_eq!(s.chi_o(), 2);
    }

    #[test]
    fn quadric_preset() {
        let s = SurfaceModel::quadric();
        let k = s.canonical();
        assert_eq!(s.intersect(k, k).unwrap(), q(8));
    }

    #[test]
    fn rejects_asymmetric_gram() {
        let basis = Basis::new("bad", vec!["a".into(), "b".into()]);
        let err = SurfaceModel::new(basis, vec![vec![0, 1], vec![2, 0]], &[0, 0], 1, [2, 0, 0]);
        assert!(matches!(
            err,
            Err(SurfaceError::AsymmetricGram { row: 0, col: 1 })
        ));
        let basis = Basis::new("bad", vec!["a".into()]);
        let err = SurfaceModel::new(basis, vec![vec![0, 1]], &[0], 1, [1, 0, 0]);
        assert!(matches!(err, Err(SurfaceError::GramShape { .. })));
    }

    #[test]
    fn k3_normal_pieces() {
        let s = SurfaceModel::k3_sextic(0);
        let kw = s.class(&[("h", -5), ("C0", 3)]).unwrap();
        let n1 = s.class(&[("h", 2), ("C0", -1)]).unwrap();
        let n2 = s.class(&[("h", 3), ("C0", -2)]).unwrap();
        let data = s.surface_data(&kw, &NormalBundle::Split(n1, n2)).unwrap();
        assert_eq!(data, SurfaceData::from_array([0, 0, 132, 32, 2, 20, 1, 0]));
    }

    #[test]
    fn adjunction_failure_reports_residual() {
        let s = SurfaceModel::del_pezzo(1);
        let h = s.class(&[("h", 1)]).unwrap();
        let kw = DivisorClass::zero(s.basis());
        let err = s
            .surface_data(&kw, &NormalBundle::Split(h.clone(), h))
            .unwrap_err();
        match err {
            SurfaceError::AdjunctionViolation { residual } => {
                assert_eq!(residual, "5h - e1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn supplied_c2() {
        let s = SurfaceModel::del_pezzo(2);
        let kw = s.class(&[("h", -7), ("e1", 2)]).unwrap();
        let data = s.surface_data(&kw, &NormalBundle::SecondChern(5)).unwrap();
        assert_eq!(data.c2n, 5);
        assert_eq!(data.kw2, 45);
        assert_eq!(data.h11s, 3);
    }

    #[test]
    fn array_round_trip() {
        let a = [1, 2, 3, 4, 5, 6, 7, 8];
        assert_eq!(SurfaceData::from_array(a).to_array(), a);
    }
}
