use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::{smith_normal_form, IntMatrix};

/// `Z/d₁ ⊕ … ⊕ Z/d_k ⊕ Z^r` with `1 < d₁ | d₂ | … | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    #[serde(with = "decimal")]
    pub torsion: Vec<BigInt>,
}

/// Invariant factors as decimal strings, so JSON readers need no bignum
/// support.
mod decimal {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|d| d.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|x| x.parse().map_err(D::Error::custom)).collect()
    }
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// `Z^rows / M·Z^cols`.
    pub fn cokernel(m: &IntMatrix) -> Self {
        let s = smith_normal_form(m);
        FgAbelianGroup {
            free_rank: m.rows() - s.rank,
            torsion: s.invariant_factors().into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    /// `ker M`, always free.
    pub fn kernel(m: &IntMatrix) -> Self {
        Self::free(m.cols() - smith_normal_form(m).rank)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}Z")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}
