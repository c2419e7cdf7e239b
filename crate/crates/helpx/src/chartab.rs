//! Character table data model: parsing, validation, class power maps and
//! quotient fusion maps.
//!
//! Tables are ingested as JSON data (frozen fixtures exported from an
//! external computation), never computed from group presentations.

use crate::cyclotomic::{gcd, lcm, CycNumber};
use num::rational::BigRational;
use num::{BigInt, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("schema error at {locus}: {message}")]
    Schema { locus: String, message: String },
    #[error("missing power map entry for prime {prime} at class {class}")]
    MissingPowerMap { prime: u32, class: usize },
    #[error("unknown character table id {0}")]
    UnknownTable(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn schema_err(locus: impl Into<String>, message: impl Into<String>) -> TableError {
    TableError::Schema { locus: locus.into(), message: message.into() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassInfo {
    pub name: String,
    #[serde(rename = "order")]
    pub element_order: u32,
    pub size: u64,
    /// class index of x^p, for each prime p dividing the group exponent
    pub power_map: BTreeMap<String, usize>,
}

impl ClassInfo {
    pub fn power_map_prime(&self, p: u32) -> Option<usize> {
        self.power_map.get(&p.to_string()).copied()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BrauerTable {
    /// indices (into the ordinary class list) of the p-regular classes
    pub regular_classes: Vec<usize>,
    pub irreducibles: Vec<Vec<CycNumber>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CharacterTable {
    pub id: String,
    pub group_order: u64,
    pub exponent: u32,
    pub classes: Vec<ClassInfo>,
    /// rows = characters, columns = classes
    pub irreducibles: Vec<Vec<CycNumber>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brauer: Option<BTreeMap<String, BrauerTable>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuotientFusion {
    pub source_id: String,
    pub target_id: String,
    /// source class index -> target class index
    pub class_map: Vec<usize>,
}

/// A validation failure; data, not an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub locus: String,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} at {}", self.identity, self.locus)
    }
}

/// Parses a character table, checking the schema (shape) but not the
/// character-theoretic identities; see [`validate`] for those.
pub fn parse_table(text: &[u8]) -> Result<CharacterTable, TableError> {
    let s = std::str::from_utf8(text).map_err(|e| schema_err("<input>", format!("not UTF-8: {e}")))?;
    let t: CharacterTable =
        serde_json::from_str(s).map_err(|e| schema_err(format!("line {}", e.line()), e.to_string()))?;
    check_schema(&t)?;
    Ok(t)
}

fn check_schema(t: &CharacterTable) -> Result<(), TableError> {
    if t.classes.is_empty() {
        return Err(schema_err("classes", "classes list is empty"));
    }
    let h = t.classes.len();
    let first = &t.classes[0];
    if first.element_order != 1 || first.size != 1 {
        return Err(schema_err("classes[0]", "first class must be the identity (order 1, size 1)"));
    }
    for (i, c) in t.classes.iter().enumerate() {
        if c.element_order == 0 || c.size == 0 {
            return Err(schema_err(format!("classes[{i}]"), "order and size must be positive"));
        }
        if t.exponent % c.element_order != 0 {
            return Err(schema_err(
                format!("classes[{i}]"),
                format!("element order {} does not divide exponent {}", c.element_order, t.exponent),
            ));
        }
        for (p, &target) in &c.power_map {
            if target >= h {
                return Err(schema_err(
                    format!("classes[{i}].power_map[{p}]"),
                    format!("class index {target} out of range"),
                ));
            }
        }
    }
    if t.irreducibles.len() != h {
        return Err(schema_err(
            "irreducibles",
            format!("expected {h} characters for {h} classes, got {}", t.irreducibles.len()),
        ));
    }
    for (r, row) in t.irreducibles.iter().enumerate() {
        if row.len() != h {
            return Err(schema_err(
                format!("irreducibles[{r}]"),
                format!("expected {h} values, got {}", row.len()),
            ));
        }
    }
    if let Some(br) = &t.brauer {
        for (p, bt) in br {
            let locus = format!("brauer[{p}]");
            if p.parse::<u32>().is_err() {
                return Err(schema_err(locus, "brauer key must be a prime number"));
            }
            for &ci in &bt.regular_classes {
                if ci >= h {
                    return Err(schema_err(locus, format!("class index {ci} out of range")));
                }
            }
            for row in &bt.irreducibles {
                if row.len() != bt.regular_classes.len() {
                    return Err(schema_err(locus, "row length != number of p-regular classes"));
                }
            }
        }
    }
    Ok(())
}

/// Checks the character-theoretic invariants; returns all violations found.
pub fn validate(t: &CharacterTable) -> Vec<Violation> {
    let mut out = Vec::new();
    let h = t.classes.len();
    let sizes_sum: u64 = t.classes.iter().map(|c| c.size).sum();
    if sizes_sum != t.group_order {
        out.push(Violation {
            identity: format!("class sizes sum to {sizes_sum}, group order is {}", t.group_order),
            locus: "classes".into(),
        });
    }
    // sum chi(1)^2 = |G|
    let mut degsq = BigRational::zero();
    for (r, row) in t.irreducibles.iter().enumerate() {
        match row[0].as_rational() {
            Some(d) if d.is_integer() && d.numer().is_positive() => {
                degsq += &d * &d;
            }
            _ => out.push(Violation {
                identity: "character degree is not a positive integer".into(),
                locus: format!("irreducibles[{r}][0]"),
            }),
        }
    }
    if degsq != BigRational::from_integer(BigInt::from(t.group_order)) {
        out.push(Violation {
            identity: format!("sum of squared degrees {} != group order {}", degsq, t.group_order),
            locus: "irreducibles".into(),
        });
    }
    // chi(x) in Q(zeta_{o(x)})
    for (r, row) in t.irreducibles.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            let o = t.classes[c].element_order;
            let l = lcm(v.conductor(), o);
            let lifted = v.lift_to_conductor(l).expect("lcm lift");
            if lifted.try_descend(o).ok().flatten().is_none() {
                out.push(Violation {
                    identity: format!("chi(x) not in Q(zeta_{o})"),
                    locus: format!("irreducibles[{r}][{c}]"),
                });
            }
        }
    }
    // column orthogonality
    for x in 0..h {
        for y in x..h {
            let mut s = CycNumber::zero(1);
            for row in &t.irreducibles {
                let conj = conjugate(&row[y]);
                s = s.add(&row[x].mul(&conj));
            }
            let expected = if x == y {
                CycNumber::from_rational(BigRational::from_integer(
                    BigInt::from(t.group_order / t.classes[x].size),
                ))
            } else {
                CycNumber::zero(1)
            };
            if s != expected {
                out.push(Violation {
                    identity: "column orthogonality".into(),
                    locus: format!("({}, {})", t.classes[x].name, t.classes[y].name),
                });
            }
        }
    }
    // power map order arithmetic
    for (i, c) in t.classes.iter().enumerate() {
        for (p, &target) in &c.power_map {
            let p: u32 = match p.parse() {
                Ok(p) => p,
                Err(_) => continue,
            };
            let expect = c.element_order / gcd(c.element_order, p);
            if t.classes[target].element_order != expect {
                out.push(Violation {
                    identity: format!(
                        "power map order: class of x^{p} has order {}, expected {expect}",
                        t.classes[target].element_order
                    ),
                    locus: format!("classes[{i}].power_map[{p}]"),
                });
            }
        }
    }
    out
}

/// Complex conjugate: Galois action zeta -> zeta^(-1).
pub fn conjugate(v: &CycNumber) -> CycNumber {
    if v.conductor() <= 2 {
        v.clone()
    } else {
        v.galois_apply(v.conductor() as i64 - 1).expect("-1 is coprime")
    }
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_by_name(&self, name: &str) -> Option<usize> {
        self.classes.iter().position(|c| c.name == name)
    }

    pub fn degree(&self, chi: usize) -> i64 {
        let d = self.irreducibles[chi][0].as_rational().expect("degree is rational");
        let i: i64 = d.to_integer().try_into().expect("degree fits in i64");
        i
    }

    /// All classes whose element order divides n (identity included).
    pub fn classes_of_order_dividing(&self, n: u32) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&c| n % self.classes[c].element_order == 0)
            .collect()
    }

    /// The class of x^k for x in class c.
    ///
    /// Prime factors of k that divide the exponent are chained through the
    /// stored power maps. A prime factor coprime to the class order (this
    /// covers every prime not dividing the exponent) acts as a Galois
    /// automorphism on character values, so its image class is found by
    /// matching sigma_p(chi(x)) across all characters.
    pub fn power_class(&self, c: usize, k: u64) -> Result<usize, TableError> {
        let mut cur = c;
        let o = self.classes[c].element_order as u64;
        let mut k = k % o;
        if k == 0 {
            return Ok(0);
        }
        while k > 1 {
            let p = smallest_prime_factor(k);
            cur = self.power_class_prime(cur, p as u32)?;
            k /= p;
        }
        Ok(cur)
    }

    fn power_class_prime(&self, c: usize, p: u32) -> Result<usize, TableError> {
        if let Some(idx) = self.classes[c].power_map_prime(p) {
            return Ok(idx);
        }
        let o = self.classes[c].element_order;
        if gcd(p, o) != 1 {
            return Err(TableError::MissingPowerMap { prime: p, class: c });
        }
        // Galois matching: x^p is the unique class of the same order with
        // chi(x^p) = sigma_p(chi(x)) for every chi.
        let j = (p % o) as i64;
        let mut target: Option<usize> = None;
        'cand: for cand in 0..self.classes.len() {
            if self.classes[cand].element_order != o || self.classes[cand].size != self.classes[c].size {
                continue;
            }
            for row in &self.irreducibles {
                let img = row[c]
                    .galois_apply_mod_order(j, o)
                    .map_err(|_| TableError::MissingPowerMap { prime: p, class: c })?;
                if img != row[cand] {
                    continue 'cand;
                }
            }
            target = Some(cand);
            break;
        }
        target.ok_or(TableError::MissingPowerMap { prime: p, class: c })
    }
}

fn smallest_prime_factor(k: u64) -> u64 {
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            return p;
        }
        p += 1;
    }
    k
}

impl CycNumber {
    /// sigma_j applied to a value of Q(zeta_o): the value is first moved into
    /// conductor o (character values satisfy chi(x) in Q(zeta_{o(x)})).
    pub fn galois_apply_mod_order(&self, j: i64, o: u32) -> Result<CycNumber, crate::cyclotomic::CycError> {
        let l = lcm(self.conductor(), o);
        let v = self.lift_to_conductor(l)?;
        let v = v
            .try_descend(o)?
            .ok_or(crate::cyclotomic::CycError::NotInSubfield { m: o })?;
        v.galois_apply(j.rem_euclid(o as i64))
    }
}

/// QuotientFusion invariant checks (identity to identity, order divisibility).
pub fn validate_fusion(f: &QuotientFusion, src: &CharacterTable, tgt: &CharacterTable) -> Vec<Violation> {
    let mut out = Vec::new();
    if f.class_map.len() != src.classes.len() {
        out.push(Violation {
            identity: format!(
                "class_map length {} != {} source classes",
                f.class_map.len(),
                src.classes.len()
            ),
            locus: "class_map".into(),
        });
        return out;
    }
    if f.class_map[0] != 0 {
        out.push(Violation { identity: "identity must map to identity".into(), locus: "class_map[0]".into() });
    }
    for (i, &tc) in f.class_map.iter().enumerate() {
        if tc >= tgt.classes.len() {
            out.push(Violation {
                identity: format!("target index {tc} out of range"),
                locus: format!("class_map[{i}]"),
            });
            continue;
        }
        if src.classes[i].element_order % tgt.classes[tc].element_order != 0 {
            out.push(Violation {
                identity: format!(
                    "image order {} does not divide source order {}",
                    tgt.classes[tc].element_order, src.classes[i].element_order
                ),
                locus: format!("class_map[{i}]"),
            });
        }
    }
    // counting: sum of fused class sizes = |kernel| * target size
    let kernel: u64 = src.group_order / tgt.group_order;
    for tc in 0..tgt.classes.len() {
        let fused: u64 = f
            .class_map
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == tc)
            .map(|(s, _)| src.classes[s].size)
            .sum();
        if fused != kernel * tgt.classes[tc].size {
            out.push(Violation {
                identity: format!(
                    "fused sizes {fused} != kernel {kernel} * target class size {}",
                    tgt.classes[tc].size
                ),
                locus: format!("target class {}", tgt.classes[tc].name),
            });
        }
    }
    out
}

pub fn parse_fusion(text: &[u8]) -> Result<QuotientFusion, TableError> {
    let s = std::str::from_utf8(text).map_err(|e| schema_err("<input>", format!("not UTF-8: {e}")))?;
    serde_json::from_str(s).map_err(|e| schema_err(format!("line {}", e.line()), e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn s4_fixture_parses() {
        let t = fixtures::load_table("S4").unwrap();
        assert_eq!(t.classes.len(), 5);
        let names: Vec<&str> = t.classes.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["1a", "2a", "3a", "2b", "4a"]);
        assert!(validate(&t).is_empty());
    }

    #[test]
    fn bad_schema_rejected() {
        let r = parse_table(br#"{"id":"x","group_order":1,"exponent":1,"classes":[],"irreducibles":[]}"#);
        assert!(matches!(r, Err(TableError::Schema { .. })));
        let r = parse_table(
            br#"{"id":"x","group_order":1,"exponent":1,
                 "classes":[{"name":"1a","order":1,"size":1,"power_map":{}}],
                 "irreducibles":[[{"conductor":4,"coords":[1]}]]}"#,
        );
        assert!(matches!(r, Err(TableError::Schema { .. })));
    }

    #[test]
    fn validate_catches_perturbation() {
        let mut t = fixtures::load_table("S4").unwrap();
        // flip chi(2a) of a degree-3 character
        let row = t
            .irreducibles
            .iter()
            .position(|r| r[0] == CycNumber::from_integer(3) && r[1] == CycNumber::from_integer(-1))
            .unwrap();
        t.irreducibles[row][1] = CycNumber::from_integer(1);
        let v = validate(&t);
        assert!(v.iter().any(|v| v.identity.contains("orthogonality")));
    }

    #[test]
    fn power_class_s4() {
        let t = fixtures::load_table("S4").unwrap();
        let c4a = t.class_by_name("4a").unwrap();
        let c2b = t.class_by_name("2b").unwrap();
        let c3a = t.class_by_name("3a").unwrap();
        assert_eq!(t.power_class(c4a, 2).unwrap(), c2b);
        assert_eq!(t.power_class(c4a, 1).unwrap(), c4a);
        assert_eq!(t.power_class(c3a, 3).unwrap(), 0);
        assert_eq!(t.power_class(c4a, 3).unwrap(), c4a);
    }

    #[test]
    fn power_class_galois_fallback() {
        // x^5 and x^7 on order-12 classes need the Galois route
        let t = fixtures::load_table("C3xS4").unwrap();
        for c in 0..t.classes.len() {
            if t.classes[c].element_order == 12 {
                let p5 = t.power_class(c, 5).unwrap();
                assert_eq!(t.classes[p5].element_order, 12);
                assert_eq!(t.power_class(p5, 5).unwrap(), c);
            }
        }
    }

    #[test]
    fn classes_of_order_dividing_s4() {
        let t = fixtures::load_table("S4").unwrap();
        let cs = t.classes_of_order_dividing(4);
        let names: Vec<&str> = cs.iter().map(|&c| t.classes[c].name.as_str()).collect();
        assert_eq!(names, ["1a", "2a", "2b", "4a"]);
        assert_eq!(t.classes_of_order_dividing(1), vec![0]);
    }

    #[test]
    fn all_fixtures_validate() {
        for id in fixtures::BUNDLED_TABLES {
            let t = fixtures::load_table(id).unwrap();
            let v = validate(&t);
            assert!(v.is_empty(), "{id}: {v:?}");
        }
    }

    #[test]
    fn fusions_validate() {
        for name in fixtures::BUNDLED_FUSIONS {
            let f = fixtures::load_fusion(name).unwrap();
            let s = fixtures::load_table(&f.source_id).unwrap();
            let t = fixtures::load_table(&f.target_id).unwrap();
            let v = validate_fusion(&f, &s, &t);
            assert!(v.is_empty(), "{name}: {v:?}");
        }
    }

    #[test]
    fn power_class_multiplicative() {
        let t = fixtures::load_table("S5").unwrap();
        for c in 0..t.classes.len() {
            for a in 1..=6u64 {
                for b in 1..=6u64 {
                    let ab = t.power_class(c, a * b).unwrap();
                    let step = t.power_class(t.power_class(c, a).unwrap(), b).unwrap();
                    assert_eq!(ab, step, "class {c}, a={a}, b={b}");
                }
            }
        }
    }
}
