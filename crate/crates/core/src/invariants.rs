//! The invariant vector of a smooth 4-fold and how it changes under point
//! blow-ups, exceptional-line flips and blow-ups of smooth surfaces.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::surfaces::SurfaceData;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("KW2 + KS_dot_KW = {0} is odd; chi(-K) would not be an integer")]
    Parity(i64),
    #[error("{quantity} = {value} is not an integer")]
    NonIntegral {
        quantity: &'static str,
        value: String,
    },
    #[error("cannot blow down: {field} would become {value}")]
    BlowDown { field: &'static str, value: i64 },
}

/// `rho`, `K^4`, `K^2.c2`, `chi(-K)`, Hodge numbers, `b3` and `chi(T)`.
///
/// `chi_mk` is the Euler characteristic of `-K`; the tables print it as
/// `h0(-K)`, which agrees with it on Fano 4-folds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourfoldRecord {
    pub rho: i64,
    #[serde(rename = "K4")]
    pub k4: i64,
    #[serde(rename = "K2c2")]
    pub k2c2: i64,
    #[serde(rename = "chi_mK")]
    pub chi_mk: i64,
    pub h11: i64,
    pub h22: i64,
    pub h13: i64,
    pub b3: i64,
    #[serde(rename = "chiT")]
    pub chi_t: i64,
}

impl FourfoldRecord {
    pub const FIELDS: [&'static str; 9] = [
        "rho", "K4", "K2c2", "chi_mK", "h11", "h22", "h13", "b3", "chiT",
    ];

    pub const fn to_array(&self) -> [i64; 9] {
        [
            self.rho,
            self.k4,
            self.k2c2,
            self.chi_mk,
            self.h11,
            self.h22,
            self.h13,
            self.b3,
            self.chi_t,
        ]
    }

    /// `h13 + h22 + h31` with `h31 = h13`.
    pub const fn b4(&self) -> i64 {
        self.h22 + 2 * self.h13
    }

    #[must_use]
    pub fn blow_up_point(&self) -> Self {
        FourfoldRecord {
            rho: self.rho + 1,
            k4: self.k4 - 81,
            k2c2: self.k2c2 - 18,
            chi_mk: self.chi_mk - 15,
            h11: self.h11 + 1,
            h22: self.h22 + 1,
            chi_t: self.chi_t - 4,
            ..*self
        }
    }

    /// Flips `n` exceptional lines, from the model containing them towards
    /// the model where they have been replaced.
    #[must_use]
    pub fn flip_lines(&self, n: u32) -> Self {
        let n = i64::from(n);
        FourfoldRecord {
            k4: self.k4 + n,
            k2c2: self.k2c2 - 2 * n,
            h22: self.h22 + n,
            ..*self
        }
    }

    pub fn blow_up_surface(&self, s: &SurfaceData) -> Result<Self, InvariantError> {
        let d = SurfaceDelta::new(s)?;
        Ok(FourfoldRecord {
            rho: self.rho + 1,
            k4: self.k4 + d.k4,
            k2c2: self.k2c2 + d.k2c2,
            chi_mk: self.chi_mk + d.chi_mk,
            h11: self.h11 + 1,
            h22: self.h22 + s.h11s,
            h13: self.h13 + s.h20s,
            b3: self.b3 + s.b1s,
            chi_t: self.chi_t + d.chi_t,
        })
    }

    /// Inverse of [`FourfoldRecord::blow_up_surface`]: recovers the 4-fold
    /// containing the surface from the blow-up.
    pub fn blow_down_surface(&self, s: &SurfaceData) -> Result<Self, InvariantError> {
        let d = SurfaceDelta::new(s)?;
        let down = FourfoldRecord {
            rho: self.rho - 1,
            k4: self.k4 - d.k4,
            k2c2: self.k2c2 - d.k2c2,
            chi_mk: self.chi_mk - d.chi_mk,
            h11: self.h11 - 1,
            h22: self.h22 - s.h11s,
            h13: self.h13 - s.h20s,
            b3: self.b3 - s.b1s,
            chi_t: self.chi_t - d.chi_t,
        };
        if self.rho < 2 {
            return Err(InvariantError::BlowDown {
                field: "rho",
                value: down.rho,
            });
        }
        for (field, value) in [
            ("h11", down.h11),
            ("h22", down.h22),
            ("h13", down.h13),
            ("b3", down.b3),
        ] {
            if value < 0 {
                return Err(InvariantError::BlowDown { field, value });
            }
        }
        Ok(down)
    }
}

/// Invariants of `P^4`.
pub const fn p4_record() -> FourfoldRecord {
    FourfoldRecord {
        rho: 1,
        k4: 625,
        k2c2: 250,
        chi_mk: 126,
        h11: 1,
        h22: 1,
        h13: 0,
        b3: 0,
        chi_t: 24,
    }
}

/// Changes of `K^4`, `K^2.c2`, `chi(-K)` and `chi(T)` under a surface
/// blow-up, evaluated over the rationals and checked to be integral.
struct SurfaceDelta {
    k4: i64,
    k2c2: i64,
    chi_mk: i64,
    chi_t: i64,
}

impl SurfaceDelta {
    fn new(s: &SurfaceData) -> Result<Self, InvariantError> {
        let parity = s.kw2 + s.ks_dot_kw;
        if parity % 2 != 0 {
            return Err(InvariantError::Parity(parity));
        }
        let q = |n: i64| Rational::from(n);
        let half = Rational::new(1, 2);
        let (ks2, kskw, kw2, c2n, chi_o) =
            (q(s.ks2), q(s.ks_dot_kw), q(s.kw2), q(s.c2n), q(s.chi_os));

        let k4 = -q(3) * kw2 - q(2) * kskw + c2n - ks2;
        let k2c2 = -q(12) * chi_o + q(2) * ks2 - q(2) * kskw - q(2) * c2n;
        let chi_mk = -chi_o - half * (kw2 + kskw);
        let chi_t = -q(2) * chi_o - half * (kw2 - kskw) + c2n;

        Ok(SurfaceDelta {
            k4: integral("K4", k4)?,
            k2c2: integral("K2c2", k2c2)?,
            chi_mk: integral("chi_mK", chi_mk)?,
            chi_t: integral("chiT", chi_t)?,
        })
    }
}

fn integral(quantity: &'static str, value: Rational) -> Result<i64, InvariantError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(InvariantError::NonIntegral {
            quantity,
            value: value.to_string(),
        })
    }
}

impl fmt::Display for FourfoldRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Self::FIELDS
            .iter()
            .zip(self.to_array())
            .map(|(name, v)| format!("{name}={v}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}
