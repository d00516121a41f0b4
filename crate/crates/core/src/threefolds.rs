//! Degree arithmetic for the weak Fano 3-fold bases `Y = Bl_r Y0`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreefoldError {
    #[error("blowing up {r} points of {name} leaves -K^3 = {degree}, which is not positive")]
    NotWeakFano { name: String, r: u32, degree: i64 },
    #[error("-K^3 = {0} is odd")]
    OddDegree(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ThreefoldKind {
    Fano,
    WeakFano,
}

impl fmt::Display for ThreefoldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThreefoldKind::Fano => "Fano",
            ThreefoldKind::WeakFano => "weak Fano",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreefoldRecord {
    pub name: String,
    #[serde(rename = "minusK3")]
    pub minus_k3: i64,
    pub rho: i64,
    pub kind: ThreefoldKind,
}

impl ThreefoldRecord {
    fn new(name: &str, minus_k3: i64, rho: i64, kind: ThreefoldKind) -> Self {
        ThreefoldRecord {
            name: name.to_string(),
            minus_k3,
            rho,
            kind,
        }
    }
}

/// Upper bound for `-K^3` of the bases.
pub const DEGREE_CAP: i64 = 64;
/// Upper bound for `-K^3` of the bases with Picard number 2.
pub const DEGREE_CAP_RHO2: i64 = 54;

/// The six possible bases `Y0`, up to flops.
pub fn base_table() -> Vec<ThreefoldRecord> {
    use ThreefoldKind::{Fano, WeakFano};
    vec![
        ThreefoldRecord::new("P^3", 64, 1, Fano),
        ThreefoldRecord::new("P(T_P^2)", 48, 2, Fano),
        ThreefoldRecord::new("linear section of Gr(2,5)", 40, 1, Fano),
        ThreefoldRecord::new("JPR 2.13(1.iv)", 40, 2, WeakFano),
        ThreefoldRecord::new("JPR 2.13(1.iii)", 32, 2, WeakFano),
        ThreefoldRecord::new("(1,2) divisor in P^2 x P^2", 30, 2, Fano),
    ]
}

/// Blows up `r` general points: `-K^3` drops by `8r`, `rho` grows by `r`.
/// The result must keep `-K^3 > 0`.
pub fn blow_up_point3(rec: &ThreefoldRecord, r: u32) -> Result<ThreefoldRecord, ThreefoldError> {
    let degree = rec.minus_k3 - 8 * i64::from(r);
    if degree <= 0 {
        return Err(ThreefoldError::NotWeakFano {
            name: rec.name.clone(),
            r,
            degree,
        });
    }
    Ok(ThreefoldRecord {
        name: if r == 0 {
            rec.name.clone()
        } else {
            format!("Bl_{r} {}", rec.name)
        },
        minus_k3: degree,
        rho: rec.rho + i64::from(r),
        kind: if r == 0 {
            rec.kind
        } else {
            ThreefoldKind::WeakFano
        },
    })
}

/// `h0(-K) = -K^3 / 2 + 3` by Riemann-Roch and Kawamata-Viehweg vanishing.
pub fn h0_minus_k(minus_k3: i64) -> Result<i64, ThreefoldError> {
    if minus_k3 % 2 != 0 {
        return Err(ThreefoldError::OddDegree(minus_k3));
    }
    Ok(minus_k3 / 2 + 3)
}

/// Largest `r` with `degree - 8r > 0`.
pub fn max_points(degree: i64) -> Option<u32> {
    (degree > 0).then(|| u32::try_from((degree - 1) / 8).expect("small degree"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub base: ThreefoldRecord,
    pub r_max: u32,
    /// `rho_Y0 + r_max + 1`: the 4-fold has one more Picard class than `Y`.
    pub rho_x_max: i64,
    /// The constraint on `(rho_X, r)` under the scan threshold.
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CapBound {
    pub rho_y0: i64,
    pub cap: i64,
    pub r_max: u32,
    pub rho_x_max: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundScan {
    pub min_rho_x: i64,
    pub rows: Vec<ScanRow>,
    pub cap_bounds: Vec<CapBound>,
    pub global_max_rho_x: i64,
}

/// For each base, the most points that keep `-K^3 > 0` and the resulting
/// bound on `rho_X`; rows with `rho_X` below `min_rho_x` are dropped.
/// Sorted by decreasing `rho_X` bound, ties kept in table order.
pub fn elementary_bound_scan(min_rho_x: i64) -> BoundScan {
    let mut rows: Vec<ScanRow> = base_table()
        .into_iter()
        .filter_map(|base| {
            let r_max = max_points(base.minus_k3)?;
            let rho_x_max = base.rho + i64::from(r_max) + 1;
            let offset = base.rho + 1;
            let relation = if rho_x_max == min_rho_x {
                format!("rho_X = {rho_x_max}, r = {r_max}")
            } else {
                format!("rho_X <= {rho_x_max}, r = rho_X - {offset}")
            };
            Some(ScanRow {
                base,
                r_max,
                rho_x_max,
                relation,
            })
        })
        .filter(|row| row.rho_x_max >= min_rho_x)
        .collect();
    rows.sort_by_key(|row| std::cmp::Reverse(row.rho_x_max));

    let cap_bounds: Vec<CapBound> = [(1, DEGREE_CAP), (2, DEGREE_CAP_RHO2)]
        .into_iter()
        .map(|(rho_y0, cap)| {
            let r_max = max_points(cap).expect("caps are positive");
            CapBound {
                rho_y0,
                cap,
                r_max,
                rho_x_max: rho_y0 + i64::from(r_max) + 1,
            }
        })
        .collect();

    let global_max_rho_x = rows
        .iter()
        .map(|r| r.rho_x_max)
        .chain(cap_bounds.iter().map(|c| c.rho_x_max))
        .max()
        .unwrap_or(0);

    BoundScan {
        min_rho_x,
        rows,
        cap_bounds,
        global_max_rho_x,
    }
}
