//! Tame orders described by their codimension-one ramification data.
//!
//! At each codimension-one prime `p` the order is, étale locally, a block
//! hereditary order of ramification index `e_p`. From these indices we get
//! the discriminant `D = sum (e_p - 1)/e_p D_p`, the log centre, and the
//! graded pieces of the centre of the canonical cover, which agree prime by
//! prime with `omega_X^(i)(floor(i D))`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{self, Rat};
use crate::valmat::{self, BlockStructure, Valuation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationDatum {
    prime_id: String,
    e: usize,
    blocks: BlockStructure,
}

impl RamificationDatum {
    pub fn new(prime_id: impl Into<String>, e: usize, blocks: Option<BlockStructure>) -> Result<Self> {
        let prime_id = prime_id.into();
        if e == 0 {
            return invalid(format!("prime {prime_id}: ramification index must be at least 1"));
        }
        let blocks = match blocks {
            Some(b) if b.len() != e => {
                return invalid(format!(
                    "prime {prime_id}: {} blocks given for ramification index {e}",
                    b.len()
                ))
            }
            Some(b) => b,
            None => BlockStructure::trivial(e)?,
        };
        Ok(Self { prime_id, e, blocks })
    }

    pub fn prime_id(&self) -> &str {
        &self.prime_id
    }

    pub fn e(&self) -> usize {
        self.e
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderSpec {
    name: String,
    ramification: Vec<RamificationDatum>,
}

impl OrderSpec {
    pub fn new(name: impl Into<String>, ramification: Vec<RamificationDatum>) -> Result<Self> {
        let name = name.into();
        let mut seen = std::collections::BTreeSet::new();
        for r in &ramification {
            if !seen.insert(r.prime_id.as_str()) {
                return invalid(format!("order {name}: prime {} listed twice", r.prime_id));
            }
        }
        Ok(Self { name, ramification })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ramification(&self) -> &[RamificationDatum] {
        &self.ramification
    }

    /// Global index of `K_X + D` under a locally trivial canonical module:
    /// the lcm of the local indices.
    pub fn index(&self) -> u64 {
        self.ramification
            .iter()
            .fold(1u64, |acc, r| acc.lcm(&local_index(r.e)))
    }
}

/// JSON shape of an [`OrderSpec`]; the name comes from the enclosing document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpecRecord {
    #[serde(default)]
    pub ramification: Vec<RamificationRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RamificationRecord {
    pub prime: String,
    pub e: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<usize>>,
}

impl OrderSpecRecord {
    pub fn to_spec(&self, name: &str) -> Result<OrderSpec> {
        let data = self
            .ramification
            .iter()
            .map(|r| {
                let blocks = r.blocks.clone().map(BlockStructure::new).transpose()?;
                RamificationDatum::new(r.prime.clone(), r.e, blocks)
            })
            .collect::<Result<_>>()?;
        OrderSpec::new(name, data)
    }
}

impl From<&OrderSpec> for OrderSpecRecord {
    fn from(spec: &OrderSpec) -> Self {
        Self {
            ramification: spec
                .ramification
                .iter()
                .map(|r| RamificationRecord {
                    prime: r.prime_id.clone(),
                    e: r.e,
                    blocks: (r.blocks.sizes().iter().any(|&n| n != 1)).then(|| r.blocks.sizes().to_vec()),
                })
                .collect(),
        }
    }
}

/// A Q-divisor with zero terms normalized away, keyed by prime label.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct QDivisor(BTreeMap<String, Rat>);

impl QDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (String, Rat)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (p, c) in terms {
            if map.contains_key(&p) {
                return invalid(format!("prime {p} appears twice in divisor"));
            }
            if !c.is_zero() {
                map.insert(p, c);
            }
        }
        Ok(Self(map))
    }

    pub fn coeff(&self, prime: &str) -> Rat {
        self.0.get(prime).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.0.iter().map(|(p, c)| (p.as_str(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `floor(i D)`, coefficientwise.
    pub fn floor_multiple(&self, i: i64) -> Self {
        Self(
            self.0
                .iter()
                .map(|(p, c)| (p.clone(), (c * rational::int(i)).floor()))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        )
    }

    pub fn ceil(&self) -> Self {
        Self(self.0.iter().map(|(p, c)| (p.clone(), c.ceil())).filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn has_standard_coefficients(&self) -> bool {
        self.0.values().all(|c| rational::standard_index(c).is_some())
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.0.iter().map(|(p, c)| format!("{c}*{p}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The pair (Spec of the centre, discriminant).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCentre {
    pub divisor: QDivisor,
    pub source: OrderSpec,
}

pub fn discriminant(spec: &OrderSpec) -> QDivisor {
    let terms = spec
        .ramification
        .iter()
        .map(|r| (r.prime_id.clone(), standard_coefficient(r.e)));
    QDivisor::from_terms(terms).expect("prime ids are distinct")
}

/// `(e - 1) / e`.
pub fn standard_coefficient(e: usize) -> Rat {
    let e = rational::int(e as i64);
    (&e - Rat::one()) / e
}

/// Least `m >= 1` with `m (e - 1) / e` integral.
pub fn local_index(e: usize) -> u64 {
    let e = e.max(1) as u64;
    e / e.gcd(&(e - 1))
}

/// `v_i = -floor(i (e - 1) / e)` for `i = 0..m`.
pub fn cover_graded_valuations(e: usize, m: usize) -> Vec<i64> {
    let e = e.max(1) as i64;
    (0..m as i64).map(|i| -Integer::div_floor(&(i * (e - 1)), &e)).collect()
}

pub fn log_centre(spec: &OrderSpec) -> LogCentre {
    LogCentre { divisor: discriminant(spec), source: spec.clone() }
}

/// Per-degree comparison of the three descriptions of the cover's centre at one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCentreCheck {
    pub e: usize,
    pub closed_form: Vec<i64>,
    /// Centralizers of `omega^i` computed from valuation matrices.
    pub centralizers: Vec<Valuation>,
    /// Coefficients of `floor(i D)` at the prime.
    pub round_down: Vec<i64>,
}

impl CoverCentreCheck {
    pub fn holds(&self) -> bool {
        self.closed_form.len() == self.centralizers.len()
            && self.closed_form.len() == self.round_down.len()
            && self
                .closed_form
                .iter()
                .zip(&self.centralizers)
                .zip(&self.round_down)
                .all(|((v, z), r)| Valuation::Finite(*v) == *z && -v == *r)
    }
}

/// Computes the graded valuations three ways for a prime of index `e`, degrees `0..m`.
pub fn check_cover_centre(e: usize, m: usize) -> Result<CoverCentreCheck> {
    let closed_form = cover_graded_valuations(e, m);
    let centralizers = (0..m)
        .map(|i| {
            let i = u32::try_from(i).map_err(|_| crate::Error::Overflow("degree"))?;
            valmat::centralizer(&valmat::omega_power(e, i)?)
        })
        .collect::<Result<_>>()?;
    let d = QDivisor::from_terms([("p".to_string(), standard_coefficient(e))])?;
    let round_down = (0..m as i64)
        .map(|i| rational::floor_i64(&d.floor_multiple(i).coeff("p")))
        .collect::<Result<_>>()?;
    Ok(CoverCentreCheck { e, closed_form, centralizers, round_down })
}

/// Whether `v_{i+m} = v_i - m (e-1)/e` for all `i < horizon`.
pub fn is_cover_period(e: usize, m: usize, horizon: usize) -> bool {
    let shift = standard_coefficient(e) * rational::int(m as i64);
    if !rational::is_integer(&shift) {
        return false;
    }
    let Ok(shift) = rational::floor_i64(&shift) else { return false };
    let v = cover_graded_valuations(e, horizon + m);
    (0..horizon).all(|i| v[i + m] == v[i] - shift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn spec(data: &[(&str, usize)]) -> OrderSpec {
        OrderSpec::new(
            "test",
            data.iter().map(|&(p, e)| RamificationDatum::new(p, e, None).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn discriminants() {
        let d = discriminant(&spec(&[("p", 2)]));
        assert_eq!(d.coeff("p"), ratio(1, 2));
        assert!(discriminant(&spec(&[("p", 1)])).is_zero());
        let d = discriminant(&spec(&[("p1", 2), ("p2", 3)]));
        assert_eq!(d.coeff("p1"), ratio(1, 2));
        assert_eq!(d.coeff("p2"), ratio(2, 3));
        assert_eq!(d.to_string(), "1/2*p1 + 2/3*p2");
    }

    #[test]
    fn spec_validation() {
        assert!(RamificationDatum::new("p", 0, None).is_err());
        let blocks = BlockStructure::new(vec![1, 2]).unwrap();
        assert!(RamificationDatum::new("p", 3, Some(blocks.clone())).is_err());
        assert!(RamificationDatum::new("p", 2, Some(blocks)).is_ok());
        let dup = vec![
            RamificationDatum::new("p", 2, None).unwrap(),
            RamificationDatum::new("p", 3, None).unwrap(),
        ];
        assert!(OrderSpec::new("dup", dup).is_err());
    }

    #[test]
    fn local_indices() {
        assert_eq!(local_index(1), 1);
        assert_eq!(local_index(2), 2);
        assert_eq!(local_index(6), 6);
        assert_eq!(spec(&[("p", 2), ("q", 3)]).index(), 6);
    }

    #[test]
    fn graded_valuations() {
        assert_eq!(cover_graded_valuations(2, 2), vec![0, 0]);
        assert_eq!(cover_graded_valuations(3, 3), vec![0, 0, -1]);
        assert_eq!(cover_graded_valuations(1, 1), vec![0]);
        assert!(check_cover_centre(3, 3).unwrap().holds());
    }

    #[test]
    fn log_centres() {
        let lc = log_centre(&spec(&[]));
        assert!(lc.divisor.is_zero());
        let lc = log_centre(&spec(&[("B", 2)]));
        assert_eq!(lc.divisor.coeff("B"), ratio(1, 2));
        assert!(lc.divisor.has_standard_coefficients());
        assert_eq!(lc.divisor.ceil().coeff("B"), Rat::one());
    }

    #[test]
    fn record_round_trip() {
        let s = OrderSpec::new(
            "o",
            vec![
                RamificationDatum::new("p", 3, Some(BlockStructure::new(vec![2, 1, 2]).unwrap())).unwrap(),
                RamificationDatum::new("q", 2, None).unwrap(),
            ],
        )
        .unwrap();
        let rec = OrderSpecRecord::from(&s);
        assert_eq!(rec.to_spec("o").unwrap(), s);
    }
}
