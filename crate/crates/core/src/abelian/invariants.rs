use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::matrix::{smith_normal_form, IntMatrix};
use crate::group::Presentation;

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> IntMatrix {
    let n = p.generator_count();
    let rels = p.relators();
    let mut m = IntMatrix::zeros(rels.len(), n);
    for (i, r) in rels.iter().enumerate() {
        for l in r.letters() {
            let e = if l.inverse { -1 } else { 1 };
            m[(i, l.generator as usize)] += e;
        }
    }
    m
}

/// `Z^free_rank ⊕ Z/t₁ ⊕ … ⊕ Z/t_k` with `t₁ | t₂ | … | t_k` and every `tᵢ ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Componentwise direct sum, re-normalized to invariant factors.
    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let k = self.torsion.len() + other.torsion.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, t) in self.torsion.iter().chain(&other.torsion).enumerate() {
            m[(i, i)] = t.clone();
        }
        let torsion = smith_normal_form(&m)
            .invariant_factors()
            .into_iter()
            .filter(|d| !d.is_one())
            .collect();
        AbelianInvariants {
            free_rank: self.free_rank + other.free_rank,
            torsion,
        }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    let snf = smith_normal_form(&relation_matrix(p));
    let factors = snf.invariant_factors();
    AbelianInvariants {
        free_rank: p.generator_count() - factors.len(),
        torsion: factors.into_iter().filter(|d| !d.is_one() && !d.is_zero()).collect(),
    }
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        // Small values serialize as JSON numbers, huge ones as strings.
        let out: Vec<serde_json::Value> = v
            .iter()
            .map(|x| match i64::try_from(x) {
                Ok(i) => serde_json::Value::from(i),
                Err(_) => serde_json::Value::from(x.to_string()),
            })
            .collect();
        out.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.into_iter()
            .map(|v| match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom("torsion entry is not an integer")),
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom),
                _ => Err(D::Error::custom("torsion entry must be an integer")),
            })
            .collect()
    }
}
