//! The parameter quadruple `(z, z′, w, w′)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarJson};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Params {
    pub z: Scalar,
    pub z2: Scalar,
    pub w: Scalar,
    pub w2: Scalar,
}

impl Params {
    pub fn new(z: Scalar, z2: Scalar, w: Scalar, w2: Scalar) -> Self {
        Self { z, z2, w, w2 }
    }

    pub fn parse(z: &str, z2: &str, w: &str, w2: &str) -> Result<Self> {
        Ok(Self::new(z.parse()?, z2.parse()?, w.parse()?, w2.parse()?))
    }

    /// `(num/den, …)` with real rational entries.
    pub fn ratios(v: [(i64, i64); 4]) -> Self {
        let s = |(n, d): (i64, i64)| Scalar::from_ratio(n, d);
        Self::new(s(v[0]), s(v[1]), s(v[2]), s(v[3]))
    }

    /// `(z, z′) ↔ (w, w′)`.
    pub fn mirror(&self) -> Self {
        Self::new(self.w.clone(), self.w2.clone(), self.z.clone(), self.z2.clone())
    }

    /// `(z + m, z′ + m, w − m, w′ − m)`.
    pub fn shifted(&self, m: i64) -> Self {
        let m = Scalar::from_int(m);
        Self::new(&self.z + &m, &self.z2 + &m, &self.w - &m, &self.w2 - &m)
    }

    pub fn is_real(&self) -> bool {
        [&self.z, &self.z2, &self.w, &self.w2].iter().all(|s| s.is_real())
    }

    pub fn sum(&self) -> Scalar {
        &self.z + &self.z2 + &self.w + &self.w2
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z={}, z'={}, w={}, w'={}", self.z, self.z2, self.w, self.w2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub z: ScalarJson,
    pub z_prime: ScalarJson,
    pub w: ScalarJson,
    pub w_prime: ScalarJson,
}

impl From<&Params> for ParamsJson {
    fn from(p: &Params) -> Self {
        Self { z: (&p.z).into(), z_prime: (&p.z2).into(), w: (&p.w).into(), w_prime: (&p.w2).into() }
    }
}

impl TryFrom<&ParamsJson> for Params {
    type Error = Error;
    fn try_from(j: &ParamsJson) -> Result<Self> {
        Ok(Params::new(
            Scalar::try_from(&j.z)?,
            Scalar::try_from(&j.z_prime)?,
            Scalar::try_from(&j.w)?,
            Scalar::try_from(&j.w_prime)?,
        ))
    }
}
