//! Exact arithmetic in group rings O[1/S]G over explicit permutation groups,
//! used to verify explicit torsion units and compute their invariants.

use crate::chartab::CharacterTable;
use crate::cyclotomic::{divisors, CycNumber};
use crate::help::PADistribution;
use num::rational::BigRational;
use num::{BigInt, One, Signed, Zero};
use serde::Deserialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupRingError {
    #[error("elements belong to different groups or incompatible rings")]
    RingMismatch,
    #[error("coefficient violates the ring: {0}")]
    RingViolation(String),
    #[error("group does not match table {0}: {1}")]
    TableMismatch(String, String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("multiplicity mu_{l} of character {chi} is {value}, not a non-negative integer")]
    NonIntegerMultiplicity { chi: usize, l: u32, value: String },
}

pub type Perm = Vec<u16>;

fn pmul(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

fn pinv(a: &Perm) -> Perm {
    let mut out = vec![0u16; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

/// An explicit finite permutation group matched against a character table.
#[derive(Debug)]
pub struct FiniteGroup {
    pub id: String,
    pub degree: usize,
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// class index (into the companion table) of each element
    pub class_of: Vec<usize>,
    pub identity: usize,
}

#[derive(Deserialize)]
struct GroupFile {
    id: String,
    degree: usize,
    generators: Vec<Vec<u16>>,
}

impl FiniteGroup {
    /// Generates the closure of the given permutations and matches its
    /// conjugacy classes to the table by (element order, class size); the
    /// match must be unambiguous.
    pub fn from_generators(
        id: &str,
        degree: usize,
        generators: &[Perm],
        table: &CharacterTable,
    ) -> Result<Self, GroupRingError> {
        let identity: Perm = (0..degree as u16).collect();
        let mut elements = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity.clone(), 0usize);
        let mut frontier = vec![identity.clone()];
        while let Some(e) = frontier.pop() {
            for g in generators {
                for prod in [pmul(&e, g), pmul(g, &e)] {
                    if !index.contains_key(&prod) {
                        index.insert(prod.clone(), elements.len());
                        elements.push(prod.clone());
                        frontier.push(prod);
                    }
                }
            }
        }
        if elements.len() as u64 != table.group_order {
            return Err(GroupRingError::TableMismatch(
                table.id.clone(),
                format!("group has {} elements, table says {}", elements.len(), table.group_order),
            ));
        }
        // conjugacy classes
        let n = elements.len();
        let mut class_id = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_id[i] != usize::MAX {
                continue;
            }
            let mut cls = Vec::new();
            for g in &elements {
                let conj = pmul(&pmul(g, &elements[i]), &pinv(g));
                let j = index[&conj];
                if class_id[j] == usize::MAX {
                    class_id[j] = classes.len();
                    cls.push(j);
                }
            }
            classes.push(cls);
        }
        // element orders
        let order_of = |e: &Perm| -> u32 {
            let mut k = 1u32;
            let mut x = e.clone();
            while x != identity {
                x = pmul(&x, e);
                k += 1;
            }
            k
        };
        // match classes to table columns by (order, size)
        let mut table_slot: HashMap<(u32, u64), Vec<usize>> = HashMap::new();
        for (ci, c) in table.classes.iter().enumerate() {
            table_slot.entry((c.element_order, c.size)).or_default().push(ci);
        }
        let mut class_of = vec![0usize; n];
        for cls in &classes {
            let o = order_of(&elements[cls[0]]);
            let key = (o, cls.len() as u64);
            let slots = table_slot.get(&key).ok_or_else(|| {
                GroupRingError::TableMismatch(table.id.clone(), format!("no class with profile {key:?}"))
            })?;
            if slots.len() != 1 {
                return Err(GroupRingError::TableMismatch(
                    table.id.clone(),
                    format!("ambiguous class profile {key:?}"),
                ));
            }
            for &e in cls {
                class_of[e] = slots[0];
            }
        }
        Ok(FiniteGroup { id: id.to_string(), degree, elements, index, class_of, identity: 0 })
    }

    pub fn from_fixture(text: &[u8], table: &CharacterTable) -> Result<Self, GroupRingError> {
        let gf: GroupFile =
            serde_json::from_slice(text).map_err(|e| GroupRingError::Schema(e.to_string()))?;
        FiniteGroup::from_generators(&gf.id, gf.degree, &gf.generators, table)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&pmul(&self.elements[a], &self.elements[b])]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&pinv(&self.elements[a])]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn element_order_of(&self, mut a: usize) -> u32 {
        let mut k = 1;
        let start = a;
        while a != self.identity {
            a = self.mul(a, start);
            k += 1;
        }
        k
    }
}

/// The coefficient ring O[1/S]: O = Z[zeta_m], S a set of rational primes
/// allowed in denominators.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct RingSpec {
    pub conductor: u32,
    pub denominator_primes: Vec<u32>,
}

impl RingSpec {
    fn admits(&self, c: &CycNumber) -> Result<(), GroupRingError> {
        if self.conductor % c.conductor() != 0 {
            return Err(GroupRingError::RingViolation(format!(
                "coefficient conductor {} does not divide ring conductor {}",
                c.conductor(),
                self.conductor
            )));
        }
        for coord in c.coords() {
            let mut d = coord.denom().clone();
            for &p in &self.denominator_primes {
                let pb = BigInt::from(p);
                while (&d % &pb).is_zero() {
                    d /= &pb;
                }
            }
            if !d.is_one() && !(-&d).is_one() {
                return Err(GroupRingError::RingViolation(format!(
                    "denominator {} not supported by primes {:?}",
                    coord.denom(),
                    self.denominator_primes
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct GroupRingElement {
    pub group: Arc<FiniteGroup>,
    pub ring: RingSpec,
    /// sparse: element index -> coefficient (zero coefficients dropped)
    pub coeffs: BTreeMap<usize, CycNumber>,
}

#[derive(Deserialize)]
struct UnitFileTerm {
    perm: Vec<u16>,
    coeff: CycNumber,
}

#[derive(Deserialize)]
struct UnitFile {
    group_id: String,
    ring: RingSpec,
    terms: Vec<UnitFileTerm>,
}

pub enum OrderResult {
    Order(u32),
    NotTorsionWithinBound,
}

impl GroupRingElement {
    pub fn new(
        group: Arc<FiniteGroup>,
        ring: RingSpec,
        coeffs: BTreeMap<usize, CycNumber>,
    ) -> Result<Self, GroupRingError> {
        let coeffs: BTreeMap<usize, CycNumber> =
            coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for c in coeffs.values() {
            ring.admits(c)?;
        }
        Ok(GroupRingElement { group, ring, coeffs })
    }

    pub fn identity(group: Arc<FiniteGroup>, ring: RingSpec) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(group.identity, CycNumber::one());
        GroupRingElement { group, ring, coeffs }
    }

    /// Parses the bundled unit file format and resolves its group id against
    /// the given table.
    pub fn from_unit_file(
        text: &[u8],
        group: Arc<FiniteGroup>,
    ) -> Result<Self, GroupRingError> {
        let uf: UnitFile =
            serde_json::from_slice(text).map_err(|e| GroupRingError::Schema(e.to_string()))?;
        if uf.group_id != group.id {
            return Err(GroupRingError::Schema(format!(
                "unit is over group {}, expected {}",
                uf.group_id, group.id
            )));
        }
        let mut coeffs = BTreeMap::new();
        for (i, term) in uf.terms.iter().enumerate() {
            let idx = group
                .index_of(&term.perm)
                .ok_or_else(|| GroupRingError::Schema(format!("terms[{i}]: unknown permutation")))?;
            if coeffs.insert(idx, term.coeff.clone()).is_some() {
                return Err(GroupRingError::Schema(format!("terms[{i}]: duplicate permutation")));
            }
        }
        GroupRingElement::new(group, uf.ring, coeffs)
    }

    pub fn unit_file_group_id(text: &[u8]) -> Result<String, GroupRingError> {
        let uf: UnitFile =
            serde_json::from_slice(text).map_err(|e| GroupRingError::Schema(e.to_string()))?;
        Ok(uf.group_id)
    }

    pub fn gr_mul(&self, other: &GroupRingElement) -> Result<GroupRingElement, GroupRingError> {
        if !Arc::ptr_eq(&self.group, &other.group) || self.ring != other.ring {
            return Err(GroupRingError::RingMismatch);
        }
        let mut coeffs: BTreeMap<usize, CycNumber> = BTreeMap::new();
        for (&g, cg) in &self.coeffs {
            for (&h, ch) in &other.coeffs {
                let k = self.group.mul(g, h);
                let term = cg.mul(ch);
                coeffs
                    .entry(k)
                    .and_modify(|acc| *acc = acc.add(&term))
                    .or_insert(term);
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(GroupRingElement { group: self.group.clone(), ring: self.ring.clone(), coeffs })
    }

    pub fn gr_pow(&self, k: u32) -> Result<GroupRingElement, GroupRingError> {
        let mut result = GroupRingElement::identity(self.group.clone(), self.ring.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.gr_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.gr_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1
            && self
                .coeffs
                .get(&self.group.identity)
                .map(|c| *c == CycNumber::one())
                .unwrap_or(false)
    }

    pub fn augmentation(&self) -> CycNumber {
        let mut s = CycNumber::zero(1);
        for c in self.coeffs.values() {
            s = s.add(c);
        }
        s
    }

    /// Class-indexed coefficient sums, as a distribution of the given order.
    pub fn partial_augmentations(&self, table: &CharacterTable, order: u32) -> PADistribution {
        let mut values: BTreeMap<usize, CycNumber> = BTreeMap::new();
        for (&g, c) in &self.coeffs {
            let cls = self.group.class_of[g];
            values
                .entry(cls)
                .and_modify(|acc| *acc = acc.add(c))
                .or_insert_with(|| c.clone());
        }
        values.retain(|_, c| !c.is_zero());
        let _ = table;
        PADistribution { order, values }
    }

    /// Sum of coefficients over elements of order m (the generalized trace).
    pub fn generalized_trace(&self, m: u32) -> CycNumber {
        let mut s = CycNumber::zero(1);
        for (&g, c) in &self.coeffs {
            if self.group.element_order_of(g) == m {
                s = s.add(c);
            }
        }
        s
    }

    /// Least k <= bound with u^k = 1.
    pub fn element_order(&self, bound: u32) -> OrderResult {
        let mut pow = GroupRingElement::identity(self.group.clone(), self.ring.clone());
        for k in 1..=bound {
            pow = match pow.gr_mul(self) {
                Ok(p) => p,
                Err(_) => return OrderResult::NotTorsionWithinBound,
            };
            if pow.is_one() {
                return OrderResult::Order(k);
            }
        }
        OrderResult::NotTorsionWithinBound
    }

    /// chi(u) = sum_g u_g chi(g), from raw coefficients.
    pub fn character_value(&self, table: &CharacterTable, chi: usize) -> CycNumber {
        let mut s = CycNumber::zero(1);
        for (&g, c) in &self.coeffs {
            let cls = self.group.class_of[g];
            s = s.add(&c.mul(&table.irreducibles[chi][cls]));
        }
        s
    }

    /// chi(u) via partial augmentations: sum_x eps_x(u) chi(x). Agrees with
    /// [`Self::character_value`]; both routes are kept for cross-validation.
    pub fn character_value_via_pa(&self, table: &CharacterTable, chi: usize) -> CycNumber {
        let pa = self.partial_augmentations(table, 1);
        let mut s = CycNumber::zero(1);
        for (&cls, eps) in &pa.values {
            s = s.add(&eps.mul(&table.irreducibles[chi][cls]));
        }
        s
    }

    /// Eigenvalue multiplicities mu_0..mu_{n-1} of u under chi, for u^n = 1:
    /// mu_l = (1/n) sum_{d|n} Tr_{Q(zeta_n^d)/Q}(chi(u^d) zeta_n^{-dl}).
    pub fn eigenvalue_multiplicities(
        &self,
        table: &CharacterTable,
        chi: usize,
        n: u32,
    ) -> Result<Vec<u64>, GroupRingError> {
        let mut char_values: BTreeMap<u32, CycNumber> = BTreeMap::new();
        for d in divisors(n) {
            let ud = self.gr_pow(d)?;
            char_values.insert(d, ud.character_value(table, chi));
        }
        let mut mus = Vec::with_capacity(n as usize);
        for l in 0..n {
            let mut total = BigRational::zero();
            for d in divisors(n) {
                let root = CycNumber::make_root(n, -((d as i64) * (l as i64)));
                let bad = || GroupRingError::NonIntegerMultiplicity {
                    chi,
                    l,
                    value: "character value outside expected subfield".into(),
                };
                // chi(u^d) lies in Q(zeta_{n/d}), so the product descends to
                // conductor n, where the subfield trace is taken.
                let lc = crate::cyclotomic::lcm(char_values[&d].conductor(), n);
                let prod = char_values[&d]
                    .lift_to_conductor(lc)
                    .expect("lift")
                    .mul(&root)
                    .try_descend(n)
                    .map_err(|_| bad())?
                    .ok_or_else(bad)?;
                let tr = prod.trace_to_q(d).map_err(|_| bad())?;
                total += tr;
            }
            let nn = BigRational::from_integer(BigInt::from(n));
            let mu = &total / &nn;
            if !mu.is_integer() || mu.numer().is_negative() {
                return Err(GroupRingError::NonIntegerMultiplicity { chi, l, value: mu.to_string() });
            }
            mus.push(mu.to_integer().try_into().expect("multiplicity fits"));
        }
        Ok(mus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s4() -> (Arc<FiniteGroup>, CharacterTable) {
        let table = fixtures::load_table("S4").unwrap();
        let g = FiniteGroup::from_fixture(&fixtures::load_raw("group_S4").unwrap(), &table).unwrap();
        (Arc::new(g), table)
    }

    fn s4_unit() -> (GroupRingElement, CharacterTable) {
        let (g, table) = s4();
        let u =
            GroupRingElement::from_unit_file(&fixtures::load_raw("unit_S4_order4").unwrap(), g).unwrap();
        (u, table)
    }

    #[test]
    fn group_matches_table() {
        let (g, table) = s4();
        assert_eq!(g.order(), 24);
        for (i, e) in g.elements.iter().enumerate() {
            let o = g.element_order_of(i);
            assert_eq!(table.classes[g.class_of[i]].element_order, o, "element {e:?}");
        }
    }

    #[test]
    fn s4_unit_has_order_4() {
        let (u, _) = s4_unit();
        assert_eq!(u.augmentation(), CycNumber::one());
        match u.element_order(48) {
            OrderResult::Order(k) => assert_eq!(k, 4),
            _ => panic!("unit should be torsion"),
        }
    }

    #[test]
    fn s4_unit_partial_augmentations() {
        let (u, table) = s4_unit();
        let pa = u.partial_augmentations(&table, 4);
        let i = CycNumber::make_root(4, 1);
        let c2a = table.class_by_name("2a").unwrap();
        let c2b = table.class_by_name("2b").unwrap();
        let c4a = table.class_by_name("4a").unwrap();
        assert_eq!(pa.values.get(&c2a), Some(&i));
        assert_eq!(pa.values.get(&c2b), Some(&CycNumber::one()));
        assert_eq!(pa.values.get(&c4a), Some(&i.neg()));
        assert_eq!(pa.values.len(), 3, "other classes must vanish: {pa:?}");
    }

    #[test]
    fn s4_unit_square_is_2b() {
        let (u, table) = s4_unit();
        let u2 = u.gr_pow(2).unwrap();
        let pa = u2.partial_augmentations(&table, 2);
        let c2b = table.class_by_name("2b").unwrap();
        assert_eq!(pa.values.len(), 1);
        assert_eq!(pa.values.get(&c2b), Some(&CycNumber::one()));
    }

    #[test]
    fn s4_unit_character_values() {
        let (u, table) = s4_unit();
        // chi_3a: the degree-3 character with chi(2a) = -1
        let chi3a = table
            .irreducibles
            .iter()
            .position(|r| r[0] == CycNumber::from_integer(3) && r[1] == CycNumber::from_integer(-1))
            .unwrap();
        let want = CycNumber::from_integer(-1)
            .add(&CycNumber::make_root(4, 1).scalar_mul(&BigRational::from_integer(BigInt::from(-2))));
        assert_eq!(u.character_value(&table, chi3a), want);
        let chi2 = table
            .irreducibles
            .iter()
            .position(|r| r[0] == CycNumber::from_integer(2))
            .unwrap();
        assert_eq!(u.character_value(&table, chi2), CycNumber::from_integer(2));
        // both routes agree on all characters and all powers
        for chi in 0..5 {
            for d in 1..=4 {
                let ud = u.gr_pow(d).unwrap();
                assert_eq!(ud.character_value(&table, chi), ud.character_value_via_pa(&table, chi));
            }
        }
    }

    #[test]
    fn s4_unit_multiplicities() {
        let (u, table) = s4_unit();
        let chi3a = table
            .irreducibles
            .iter()
            .position(|r| r[0] == CycNumber::from_integer(3) && r[1] == CycNumber::from_integer(-1))
            .unwrap();
        assert_eq!(u.eigenvalue_multiplicities(&table, chi3a, 4).unwrap(), vec![0, 0, 1, 2]);
        for chi in 0..5 {
            let mus = u.eigenvalue_multiplicities(&table, chi, 4).unwrap();
            let total: u64 = mus.iter().sum();
            assert_eq!(total as i64, table.degree(chi));
        }
    }

    #[test]
    fn s3_unit_order_3() {
        let table = fixtures::load_table("S3").unwrap();
        let g = Arc::new(
            FiniteGroup::from_fixture(&fixtures::load_raw("group_S3").unwrap(), &table).unwrap(),
        );
        let u =
            GroupRingElement::from_unit_file(&fixtures::load_raw("unit_S3_order3").unwrap(), g).unwrap();
        assert_eq!(u.augmentation(), CycNumber::one());
        match u.element_order(54) {
            OrderResult::Order(k) => assert_eq!(k, 3),
            _ => panic!("unit should be torsion"),
        }
        let pa = u.partial_augmentations(&table, 3);
        let c3a = table.class_by_name("3a").unwrap();
        assert_eq!(pa.values.len(), 1);
        assert_eq!(pa.values.get(&c3a), Some(&CycNumber::one()));
    }

    #[test]
    fn generalized_traces() {
        let (u, _) = s4_unit();
        let one_plus_i = CycNumber::one().add(&CycNumber::make_root(4, 1));
        assert_eq!(u.generalized_trace(2), one_plus_i);
        assert_eq!(u.generalized_trace(3), CycNumber::zero(1));
    }

    #[test]
    fn denominator_discipline() {
        let (g, _) = s4();
        let bad_ring = RingSpec { conductor: 4, denominator_primes: vec![] };
        let mut coeffs = BTreeMap::new();
        coeffs.insert(
            g.identity,
            CycNumber::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2))),
        );
        assert!(GroupRingElement::new(g.clone(), bad_ring, coeffs.clone()).is_err());
        let ok_ring = RingSpec { conductor: 4, denominator_primes: vec![2] };
        assert!(GroupRingElement::new(g, ok_ring, coeffs).is_ok());
    }

    #[test]
    fn ring_mismatch_rejected() {
        let (g, _) = s4();
        let r1 = RingSpec { conductor: 4, denominator_primes: vec![2] };
        let r2 = RingSpec { conductor: 4, denominator_primes: vec![] };
        let a = GroupRingElement::identity(g.clone(), r1);
        let b = GroupRingElement::identity(g, r2);
        assert!(matches!(a.gr_mul(&b), Err(GroupRingError::RingMismatch)));
    }
}
