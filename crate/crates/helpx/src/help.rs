//! The constraint engine for normalized torsion units in group rings over
//! rings of cyclotomic integers: for a hypothetical unit of order n with
//! coefficients in Z[zeta_m], the eigenvalue-multiplicity identities yield an
//! integer linear system in the basis coordinates of the partial
//! augmentations. This module builds that system, enumerates exact integer
//! solutions along the divisor tower of n, applies a ramified-prime
//! congruence filter and a quotient-projection filter, and classifies the
//! surviving distributions.

use crate::chartab::{CharacterTable, QuotientFusion, TableError};
use crate::cyclotomic::{
    divisors, gcd, is_totally_ramified, lcm, phi, prime_factors, CycError, CycNumber,
};
use num::rational::BigRational;
use num::{BigInt, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HelpError {
    #[error("tower is missing the entry for divisor {missing}")]
    IncompleteTower { missing: u32 },
    #[error("bound propagation failed to bound variable {variable}")]
    Unbounded { variable: String },
    #[error("Brauer prime {p} divides the unit order {n}")]
    BrauerPrimeDividesOrder { p: u32, n: u32 },
    #[error("table has no Brauer data for prime {p}")]
    MissingBrauerTable { p: u32 },
    #[error("quotient survivor set for order {order} not available")]
    MissingQuotientData { order: u32 },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Cyc(#[from] CycError),
}

/// Partial augmentations of a torsion unit of the given order, indexed by
/// class; absent classes have value zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PADistribution {
    pub order: u32,
    pub values: BTreeMap<usize, CycNumber>,
}

impl PADistribution {
    /// The distribution of the identity element (order 1).
    pub fn identity(identity_class: usize) -> Self {
        let mut values = BTreeMap::new();
        values.insert(identity_class, CycNumber::one());
        PADistribution { order: 1, values }
    }

    /// The distribution of a group element from the given class.
    pub fn indicator(order: u32, class: usize) -> Self {
        let mut values = BTreeMap::new();
        values.insert(class, CycNumber::one());
        PADistribution { order, values }
    }

    pub fn augmentation(&self) -> CycNumber {
        let mut s = CycNumber::zero(1);
        for v in self.values.values() {
            s = s.add(v);
        }
        s
    }

    pub fn value(&self, class: usize) -> CycNumber {
        self.values.get(&class).cloned().unwrap_or_else(|| CycNumber::zero(1))
    }
}

/// The full divisor tower of a candidate unit u of the given order: for every
/// d | n (including d = 1 for u itself and d = n for the identity) the
/// distribution of u^d.
pub type Tower = BTreeMap<u32, PADistribution>;

#[derive(Debug, Clone, PartialEq)]
pub struct TorsionCase {
    pub order: u32,
    /// reduced coefficient conductor: the values live in Z[zeta_conductor]
    pub conductor: u32,
    pub tower: Tower,
}

impl TorsionCase {
    /// True when the tower is exactly the partial-augmentation tower of a
    /// single group element of order `self.order`.
    pub fn is_trivial(&self, t: &CharacterTable) -> bool {
        't: for (cls, info) in t.classes.iter().enumerate() {
            if info.element_order != self.order {
                continue;
            }
            for (&d, dist) in &self.tower {
                let target = match t.power_class(cls, d as u64) {
                    Ok(s) => s,
                    Err(_) => continue 't,
                };
                if *dist != PADistribution::indicator(self.order / d, target) {
                    continue 't;
                }
            }
            return true;
        }
        false
    }

    fn sort_key(&self) -> Vec<BigRational> {
        let mut key = Vec::new();
        for dist in self.tower.values() {
            let nclasses = 1 + dist.values.keys().max().copied().unwrap_or(0);
            for cls in 0..nclasses {
                let v = dist.value(cls).lift_to_conductor_of(self.conductor.max(1));
                key.extend(v);
            }
        }
        key
    }
}

trait LiftCoords {
    fn lift_to_conductor_of(&self, c: u32) -> Vec<BigRational>;
}

impl LiftCoords for CycNumber {
    fn lift_to_conductor_of(&self, c: u32) -> Vec<BigRational> {
        let m = lcm(self.conductor(), c);
        self.lift_to_conductor(m).expect("lcm lift").coords().to_vec()
    }
}

/// One unknown alpha_{x,b}: the coefficient of zeta^b in the partial
/// augmentation at class x.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Variable {
    pub class: usize,
    pub exponent: u32,
}

/// coeffs . alpha + constant = modulus * mu with mu an integer in [0, cap].
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<i64>,
    pub constant: i64,
    pub modulus: i64,
    pub cap: i64,
}

/// coeffs . alpha = rhs exactly.
#[derive(Debug, Clone)]
pub struct EqRow {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub order: u32,
    pub conductor: u32,
    pub variables: Vec<Variable>,
    pub rows: Vec<Row>,
    pub eqs: Vec<EqRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Charset {
    Ordinary,
    OrdinaryAndBrauer(u32),
}

/// Variables alpha_{x,b} for every non-identity class x of element order
/// dividing n and every basis exponent b < phi(conductor).
pub fn variable_layout(t: &CharacterTable, n: u32, conductor: u32) -> Vec<Variable> {
    let ph = phi(conductor) as u32;
    let mut vars = Vec::new();
    for cls in t.classes_of_order_dividing(n) {
        if t.classes[cls].element_order == 1 {
            continue;
        }
        for b in 0..ph {
            vars.push(Variable { class: cls, exponent: b });
        }
    }
    vars
}

fn moebius(mut n: u32) -> i64 {
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Tr over Q(zeta_n)/Q of zeta_n^a.
fn trace_of_root(n: u32, a: i64) -> i64 {
    let a = a.rem_euclid(n as i64) as u32;
    let g = gcd(a, n);
    let d = n / g;
    moebius(d) * (phi(n) / phi(d)) as i64
}

/// Tr over Q(zeta_n)/Q of z * zeta_n^e, for z with conductor dividing n.
fn full_trace(z: &CycNumber, n: u32, e: i64) -> i64 {
    let w = z.lift_to_conductor(n).expect("conductor divides field order");
    let mut total = BigRational::zero();
    for (k, c) in w.coords().iter().enumerate() {
        if !c.is_zero() {
            total += c * BigRational::from_integer(BigInt::from(trace_of_root(n, k as i64 + e)));
        }
    }
    assert!(total.is_integer(), "trace of an integral element must be an integer");
    total.to_integer().to_i64().expect("trace fits in i64")
}

/// chi(u^d) = sum_x eps_x(u^d) chi(x), from one tower entry.
fn tower_character_value(chi: &[CycNumber], dist: &PADistribution) -> CycNumber {
    let mut val = CycNumber::zero(1);
    for (&cls, eps) in &dist.values {
        val = val.add(&eps.mul(&chi[cls]));
    }
    val
}

fn known_part_row(chi: &[CycNumber], l: u32, tower: &Tower, n: u32) -> Result<i64, HelpError> {
    let mut total = 0i64;
    for d in divisors(n) {
        if d == 1 {
            continue;
        }
        let dist = tower.get(&d).ok_or(HelpError::IncompleteTower { missing: d })?;
        // chi(u^d) * zeta_n^{-dl} lies in Q(zeta_{n/d}); take the trace there
        let val = tower_character_value(chi, dist);
        total += full_trace(&val, n / d, -(l as i64));
    }
    Ok(total)
}

/// sum over 1 != d | n of Tr(chi(u^d) zeta_n^{-dl}) over the subfield fixed by
/// zeta -> zeta^(powers of d).
pub fn known_part(
    t: &CharacterTable,
    chi: usize,
    l: u32,
    tower: &Tower,
    n: u32,
) -> Result<i64, HelpError> {
    known_part_row(&t.irreducibles[chi], l, tower, n)
}

fn brauer_rows(t: &CharacterTable, p: u32) -> Result<Vec<(Vec<CycNumber>, i64)>, HelpError> {
    let b = t
        .brauer
        .as_ref()
        .and_then(|m| m.get(&p.to_string()))
        .ok_or(HelpError::MissingBrauerTable { p })?;
    let mut out = Vec::new();
    for row in &b.irreducibles {
        let mut padded = vec![CycNumber::zero(1); t.num_classes()];
        let mut degree = 0i64;
        for (slot, &cls) in b.regular_classes.iter().enumerate() {
            padded[cls] = row[slot].clone();
            if cls == 0 {
                degree = row[slot].as_rational().map(|r| r.to_integer().to_i64()).flatten().unwrap_or(0);
            }
        }
        out.push((padded, degree));
    }
    Ok(out)
}

/// One inequality row per (character, residue l mod n), plus the basis-wise
/// augmentation equalities.
pub fn build_system(
    t: &CharacterTable,
    n: u32,
    conductor: u32,
    tower: &Tower,
    charset: Charset,
) -> Result<ConstraintSystem, HelpError> {
    let variables = variable_layout(t, n, conductor);
    let mut char_rows: Vec<(Vec<CycNumber>, i64)> = t
        .irreducibles
        .iter()
        .enumerate()
        .map(|(i, row)| (row.clone(), t.degree(i)))
        .collect();
    if let Charset::OrdinaryAndBrauer(p) = charset {
        if n % p == 0 {
            return Err(HelpError::BrauerPrimeDividesOrder { p, n });
        }
        char_rows.extend(brauer_rows(t, p)?);
    }
    let mut rows = Vec::new();
    for (chi, cap) in &char_rows {
        // chi(x) * zeta_c^b computed once per variable
        let lifted: Vec<CycNumber> = variables
            .iter()
            .map(|v| chi[v.class].mul(&CycNumber::make_root(conductor, v.exponent as i64)))
            .collect();
        for l in 0..n {
            let coeffs: Vec<i64> =
                lifted.iter().map(|z| full_trace(z, n, -(l as i64))).collect();
            let constant = known_part_row(chi, l, tower, n)?;
            rows.push(Row { coeffs, constant, modulus: n as i64, cap: *cap });
        }
    }
    let mut eqs = Vec::new();
    for b in 0..phi(conductor) as u32 {
        let coeffs: Vec<i64> =
            variables.iter().map(|v| if v.exponent == b { 1 } else { 0 }).collect();
        eqs.push(EqRow { coeffs, rhs: if b == 0 { 1 } else { 0 } });
    }
    Ok(ConstraintSystem { order: n, conductor, variables, rows, eqs })
}

// ---------------------------------------------------------------------------
// bound derivation and enumeration

/// A linear form over the variables with an allowed value interval and an
/// optional congruence (form = residue mod modulus).
struct IForm {
    coeffs: Vec<i64>,
    lo: i128,
    hi: i128,
    modulus: i64,
    residue: i64,
}

struct Prepared {
    forms: Vec<IForm>,
    /// per variable: denominator-cleared rational combination of forms whose
    /// value equals the variable (only used as redundant tightening rows)
    trows: Vec<Vec<(usize, f64)>>,
    /// per character: (degree, order, indices of its rows among the forms)
    groups: Vec<(i64, i64, Vec<usize>)>,
    root_bounds: Vec<(i64, i64)>,
    prover: Option<crate::lp::BoundProver>,
}

fn collect_groups(s: &ConstraintSystem) -> Vec<(i64, i64, Vec<usize>)> {
    let n = s.order as usize;
    s.rows
        .chunks(n)
        .enumerate()
        .map(|(g, chunk)| (chunk[0].cap, s.order as i64, (g * n..g * n + n).collect()))
        .collect()
}

fn collect_forms(s: &ConstraintSystem) -> Vec<IForm> {
    let mut forms = Vec::new();
    for r in &s.rows {
        forms.push(IForm {
            coeffs: r.coeffs.clone(),
            lo: -(r.constant as i128),
            hi: r.modulus as i128 * r.cap as i128 - r.constant as i128,
            modulus: r.modulus,
            residue: (-r.constant).rem_euclid(r.modulus),
        });
    }
    for e in &s.eqs {
        forms.push(IForm { coeffs: e.coeffs.clone(), lo: e.rhs as i128, hi: e.rhs as i128, modulus: 0, residue: 0 });
    }
    forms
}

/// Exact rational elimination: select a full-column-rank subset of forms and
/// return, per variable, the combination expressing it, plus the interval it
/// seeds.
fn eliminate(
    s: &ConstraintSystem,
    forms: &[IForm],
) -> Result<(Vec<Vec<(usize, BigRational)>>, Vec<(i64, i64)>), HelpError> {
    let nv = s.variables.len();
    let mut selected: Vec<usize> = Vec::new();
    // rref rows with their pivot columns and combination over `selected`
    let mut rref: Vec<Vec<BigRational>> = Vec::new();
    let mut combo: Vec<Vec<BigRational>> = Vec::new();
    let mut pivot: Vec<usize> = Vec::new();
    for (fi, f) in forms.iter().enumerate() {
        if rref.len() == nv {
            break;
        }
        let mut res: Vec<BigRational> =
            f.coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
        let mut cmb = vec![BigRational::zero(); selected.len() + 1];
        *cmb.last_mut().unwrap() = BigRational::from_integer(BigInt::from(1));
        for (ri, row) in rref.iter().enumerate() {
            let fct = res[pivot[ri]].clone();
            if fct.is_zero() {
                continue;
            }
            for (a, b) in res.iter_mut().zip(row.iter()) {
                *a -= &fct * b;
            }
            for (k, c) in combo[ri].iter().enumerate() {
                cmb[k] -= &fct * c;
            }
        }
        let Some(p) = (0..nv).find(|&j| !res[j].is_zero()) else {
            continue;
        };
        let inv = res[p].clone();
        for a in res.iter_mut() {
            *a = &*a / &inv;
        }
        for c in cmb.iter_mut() {
            *c = &*c / &inv;
        }
        // eliminate the new pivot from earlier rows
        for ri in 0..rref.len() {
            let fct = rref[ri][p].clone();
            if fct.is_zero() {
                continue;
            }
            for j in 0..nv {
                let sub = &fct * &res[j];
                rref[ri][j] -= sub;
            }
            while combo[ri].len() < cmb.len() {
                combo[ri].push(BigRational::zero());
            }
            for k in 0..cmb.len() {
                let sub = &fct * &cmb[k];
                combo[ri][k] -= sub;
            }
        }
        selected.push(fi);
        for c in combo.iter_mut() {
            while c.len() < selected.len() {
                c.push(BigRational::zero());
            }
        }
        rref.push(res);
        combo.push(cmb);
        pivot.push(p);
    }
    if rref.len() < nv {
        let free = (0..nv).find(|j| !pivot.contains(j)).unwrap_or(0);
        let v = s.variables.get(free).copied().unwrap_or(Variable { class: 0, exponent: 0 });
        return Err(HelpError::Unbounded {
            variable: format!("alpha(class {}, exponent {})", v.class, v.exponent),
        });
    }
    // per-variable combination and exact interval seed
    let mut combos: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); nv];
    let mut bounds = vec![(0i64, 0i64); nv];
    for (ri, &p) in pivot.iter().enumerate() {
        let mut terms = Vec::new();
        let mut lo = BigRational::zero();
        let mut hi = BigRational::zero();
        for (k, c) in combo[ri].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let fi = selected[k];
            let flo = BigRational::from_integer(BigInt::from(forms[fi].lo));
            let fhi = BigRational::from_integer(BigInt::from(forms[fi].hi));
            if c.is_positive() {
                lo += c * &flo;
                hi += c * &fhi;
            } else {
                lo += c * &fhi;
                hi += c * &flo;
            }
            terms.push((fi, c.clone()));
        }
        bounds[p] = (lo.ceil().to_integer().to_i64().unwrap(), hi.floor().to_integer().to_i64().unwrap());
        combos[p] = terms;
    }
    Ok((combos, bounds))
}

fn form_range(coeffs: &[i64], bounds: &[(i64, i64)]) -> (i128, i128) {
    let mut lo = 0i128;
    let mut hi = 0i128;
    for (&a, &(l, h)) in coeffs.iter().zip(bounds) {
        if a > 0 {
            lo += a as i128 * l as i128;
            hi += a as i128 * h as i128;
        } else if a < 0 {
            lo += a as i128 * h as i128;
            hi += a as i128 * l as i128;
        }
    }
    (lo, hi)
}

/// Tightens every variable of one form against a target interval for the
/// form value. Returns None on infeasibility; updates the cached range.
#[allow(clippy::too_many_arguments)]
fn tighten_vars(
    coeffs: &[i64],
    tlo: i128,
    thi: i128,
    bounds: &mut [(i64, i64)],
    rlo: &mut i128,
    rhi: &mut i128,
    changed: &mut bool,
) -> Option<()> {
    for (j, &a) in coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let (l, h) = bounds[j];
        let contrib = if a > 0 {
            (a as i128 * l as i128, a as i128 * h as i128)
        } else {
            (a as i128 * h as i128, a as i128 * l as i128)
        };
        let rest_lo = *rlo - contrib.0;
        let rest_hi = *rhi - contrib.1;
        let vlo = tlo.max(*rlo) - rest_hi;
        let vhi = thi.min(*rhi) - rest_lo;
        let (nl, nh) = if a > 0 {
            (div_ceil(vlo, a as i128), div_floor(vhi, a as i128))
        } else {
            (div_ceil(vhi, a as i128), div_floor(vlo, a as i128))
        };
        let nl = nl.max(l as i128) as i64;
        let nh = nh.min(h as i128) as i64;
        if nl > nh {
            return None;
        }
        if (nl, nh) != (l, h) {
            bounds[j] = (nl, nh);
            *changed = true;
            let ncontrib = if a > 0 {
                (a as i128 * nl as i128, a as i128 * nh as i128)
            } else {
                (a as i128 * nh as i128, a as i128 * nl as i128)
            };
            *rlo += ncontrib.0 - contrib.0;
            *rhi += ncontrib.1 - contrib.1;
        }
    }
    Some(())
}

/// Interval propagation to a fixed point; returns None when some constraint
/// becomes infeasible. Exploits, per character, the coupling that the
/// multiplicities of its rows sum to the degree.
fn propagate(prep: &Prepared, bounds: &mut [(i64, i64)], max_sweeps: usize) -> Option<()> {
    let forms = &prep.forms;
    let mut ranges: Vec<(i128, i128)> = vec![(0, 0); forms.len()];
    for _ in 0..max_sweeps {
        let mut changed = false;
        for (fi, f) in forms.iter().enumerate() {
            let (mut rlo, mut rhi) = form_range(&f.coeffs, bounds);
            if rlo.max(f.lo) > rhi.min(f.hi) {
                return None;
            }
            // congruence feasibility over the unfixed variables
            if f.modulus > 1 {
                let m = f.modulus as i128;
                let mut fixed_sum = 0i128;
                let mut g = m;
                let mut unfixed = 0usize;
                let mut last_unfixed = 0usize;
                for (j, (&a, &(l, h))) in f.coeffs.iter().zip(bounds.iter()).enumerate() {
                    if l == h {
                        fixed_sum += a as i128 * l as i128;
                    } else if a != 0 {
                        g = num::integer::gcd(g, (a as i128).abs());
                        unfixed += 1;
                        last_unfixed = j;
                    }
                }
                let need = (f.residue as i128 - fixed_sum).rem_euclid(m);
                if need % num::integer::gcd(g, m) != 0 {
                    return None;
                }
                // one unfixed variable: its values follow an arithmetic
                // progression modulo m / gcd; align the interval endpoints
                if unfixed == 1 {
                    let j = last_unfixed;
                    let a = f.coeffs[j] as i128;
                    let gg = num::integer::gcd(a.rem_euclid(m), m);
                    let stride = m / gg;
                    let (l, h) = bounds[j];
                    let mut aligned = None;
                    for v in 0..stride {
                        if (a * v).rem_euclid(m) == need {
                            aligned = Some(v);
                            break;
                        }
                    }
                    let r = aligned?;
                    let nl = l as i128 + (r - l as i128).rem_euclid(stride);
                    let nh = h as i128 - (h as i128 - r).rem_euclid(stride);
                    if nl > nh {
                        return None;
                    }
                    if (nl as i64, nh as i64) != (l, h) {
                        let delta_l = (nl - l as i128) * a;
                        let delta_h = (nh - h as i128) * a;
                        bounds[j] = (nl as i64, nh as i64);
                        changed = true;
                        if a > 0 {
                            rlo += delta_l;
                            rhi += delta_h;
                        } else {
                            rlo += delta_h;
                            rhi += delta_l;
                        }
                    }
                }
            }
            tighten_vars(&f.coeffs, f.lo, f.hi, bounds, &mut rlo, &mut rhi, &mut changed)?;
            ranges[fi] = (rlo, rhi);
        }
        // per-character simplex coupling: the multiplicities mu_r of the rows
        // of one character sum exactly to its degree
        for &(cap, n, ref idxs) in &prep.groups {
            let n = n as i128;
            let mut mu: Vec<(i128, i128)> = Vec::with_capacity(idxs.len());
            let mut slo = 0i128;
            let mut shi = 0i128;
            for &fi in idxs {
                let f = &forms[fi];
                let (rlo, rhi) = ranges[fi];
                let mlo = div_ceil(rlo.max(f.lo) - f.lo, n).max(0);
                let mhi = div_floor(rhi.min(f.hi) - f.lo, n).min(cap as i128);
                if mlo > mhi {
                    return None;
                }
                slo += mlo;
                shi += mhi;
                mu.push((mlo, mhi));
            }
            if slo > cap as i128 || shi < (cap as i128) {
                return None;
            }
            for (k, &fi) in idxs.iter().enumerate() {
                let f = &forms[fi];
                let (mlo, mhi) = mu[k];
                let nmhi = mhi.min(cap as i128 - (slo - mlo));
                let nmlo = mlo.max(cap as i128 - (shi - mhi));
                if nmlo > nmhi {
                    return None;
                }
                let (mut rlo, mut rhi) = ranges[fi];
                tighten_vars(
                    &f.coeffs,
                    f.lo + n * nmlo,
                    f.lo + n * nmhi,
                    bounds,
                    &mut rlo,
                    &mut rhi,
                    &mut changed,
                )?;
                ranges[fi] = (rlo, rhi);
            }
        }
        // redundant elimination rows: a variable equals a fixed rational
        // combination of form values (float with outward rounding)
        for (j, terms) in prep.trows.iter().enumerate() {
            if terms.is_empty() {
                continue;
            }
            let mut lo = 0.0f64;
            let mut hi = 0.0f64;
            for &(fi, t) in terms {
                let f = &forms[fi];
                let (rlo, rhi) = ranges[fi];
                let (rl, rh) = (rlo.max(f.lo) as f64, rhi.min(f.hi) as f64);
                if t > 0.0 {
                    lo += t * rl;
                    hi += t * rh;
                } else {
                    lo += t * rh;
                    hi += t * rl;
                }
            }
            let slack = 1e-6 + 1e-12 * (lo.abs() + hi.abs());
            let nl = ((lo - slack).ceil() as i64).max(bounds[j].0);
            let nh = ((hi + slack).floor() as i64).min(bounds[j].1);
            if nl > nh {
                return None;
            }
            if (nl, nh) != bounds[j] {
                bounds[j] = (nl, nh);
                changed = true;
            }
        }
        if !changed {
            return Some(());
        }
    }
    Some(())
}

fn div_floor(a: i128, b: i128) -> i128 {
    num::integer::div_floor(a, b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    num::integer::div_ceil(a, b)
}

fn prepare(s: &ConstraintSystem) -> Result<Prepared, HelpError> {
    let nv = s.variables.len();
    let forms = collect_forms(s);
    if nv == 0 {
        return Ok(Prepared {
            forms,
            trows: Vec::new(),
            groups: Vec::new(),
            root_bounds: Vec::new(),
            prover: None,
        });
    }
    let (combos, mut bounds) = eliminate(s, &forms)?;
    let trows: Vec<Vec<(usize, f64)>> = combos
        .iter()
        .map(|terms| {
            terms
                .iter()
                .map(|(fi, c)| {
                    let num: f64 = c.numer().to_string().parse().unwrap();
                    let den: f64 = c.denom().to_string().parse().unwrap();
                    (*fi, num / den)
                })
                .collect()
        })
        .collect();
    let lp = crate::lp::BoundProver::new(
        forms
            .iter()
            .map(|f| crate::lp::LpRow { coeffs: f.coeffs.clone(), lo: f.lo, hi: f.hi })
            .collect(),
        nv,
    );
    let mut prep = Prepared {
        forms,
        trows,
        groups: collect_groups(s),
        root_bounds: Vec::new(),
        prover: Some(lp),
    };
    let feasible = lp_round(&prep, &mut bounds, 5);
    if feasible.is_none() {
        // infeasible system: signal with an empty interval
        for b in bounds.iter_mut() {
            *b = (1, 0);
        }
    }
    prep.root_bounds = bounds;
    Ok(prep)
}

/// Propagate to a fixed point, then alternate certified LP tightening with
/// propagation up to `rounds` times. None means certified infeasible.
fn lp_round(prep: &Prepared, bounds: &mut [(i64, i64)], rounds: usize) -> Option<()> {
    propagate(prep, bounds, 200)?;
    let Some(lp) = prep.prover.as_ref() else { return Some(()) };
    for _ in 0..rounds {
        match lp.tighten(bounds) {
            None => return None,
            Some(false) => break,
            Some(true) => propagate(prep, bounds, 200)?,
        }
    }
    Some(())
}

/// log2 of the remaining box volume, saturating.
fn space_bits(bounds: &[(i64, i64)]) -> u32 {
    let mut bits = 0u32;
    for &(l, h) in bounds {
        if l < h {
            bits += 64 - ((h - l) as u64).leading_zeros();
            if bits > 60 {
                return 60;
            }
        }
    }
    bits
}

/// Finite integer interval per variable, from exact elimination seeding plus
/// interval propagation. An infeasible system yields empty intervals.
pub fn derive_bounds(s: &ConstraintSystem) -> Result<Vec<(i64, i64)>, HelpError> {
    prepare(s).map(|p| p.root_bounds)
}

fn check_exact(s: &ConstraintSystem, alpha: &[i64]) -> bool {
    for r in &s.rows {
        let mut form = 0i128;
        for (&a, &v) in r.coeffs.iter().zip(alpha) {
            form += a as i128 * v as i128;
        }
        let total = form + r.constant as i128;
        let m = r.modulus as i128;
        if total < 0 || total % m != 0 || total / m > r.cap as i128 {
            return false;
        }
    }
    for e in &s.eqs {
        let mut form = 0i128;
        for (&a, &v) in e.coeffs.iter().zip(alpha) {
            form += a as i128 * v as i128;
        }
        if form != e.rhs as i128 {
            return false;
        }
    }
    true
}

fn dfs(
    s: &ConstraintSystem,
    prep: &Prepared,
    bounds: Vec<(i64, i64)>,
    out: &mut Vec<Vec<i64>>,
) {
    // pick the unfixed variable with the narrowest interval
    let mut best: Option<(usize, i64)> = None;
    for (j, &(l, h)) in bounds.iter().enumerate() {
        if l < h {
            let w = h - l;
            if best.map(|(_, bw)| w < bw).unwrap_or(true) {
                best = Some((j, w));
            }
        }
    }
    let Some((j, _)) = best else {
        let alpha: Vec<i64> = bounds.iter().map(|&(l, _)| l).collect();
        if check_exact(s, &alpha) {
            out.push(alpha);
        }
        return;
    };
    let (l, h) = bounds[j];
    for v in l..=h {
        let mut child = bounds.clone();
        child[j] = (v, v);
        let alive = propagate(prep, &mut child, 8).is_some()
            && match prep.prover.as_ref() {
                // large residual box: pay for a certified LP emptiness test
                Some(lp) if space_bits(&child) > 12 => !lp.certify_empty(&child),
                _ => true,
            };
        if alive {
            dfs(s, prep, child, out);
        }
    }
}

fn decode(s: &ConstraintSystem, alpha: &[i64]) -> PADistribution {
    let mut values: BTreeMap<usize, CycNumber> = BTreeMap::new();
    for (v, &a) in s.variables.iter().zip(alpha) {
        if a == 0 {
            continue;
        }
        let term = CycNumber::make_root(s.conductor, v.exponent as i64)
            .scalar_mul(&BigRational::from_integer(BigInt::from(a)));
        values
            .entry(v.class)
            .and_modify(|acc| *acc = acc.add(&term))
            .or_insert(term);
    }
    values.retain(|_, c| !c.is_zero());
    let values = values.into_iter().map(|(k, v)| (k, v.minimal())).collect();
    PADistribution { order: s.order, values }
}

/// All integer solutions of the system, decoded to partial augmentations
/// eps_x = sum_b alpha_{x,b} zeta^b, in lexicographic variable order.
pub fn enumerate(s: &ConstraintSystem) -> Result<Vec<PADistribution>, HelpError> {
    let prep = prepare(s)?;
    if s.variables.is_empty() {
        return Ok(Vec::new());
    }
    if prep.root_bounds.iter().any(|&(l, h)| l > h) {
        return Ok(Vec::new());
    }
    let mut sols: Vec<Vec<i64>> = Vec::new();
    dfs(s, &prep, prep.root_bounds.clone(), &mut sols);
    sols.sort();
    Ok(sols.iter().map(|a| decode(s, a)).collect())
}

// ---------------------------------------------------------------------------
// filters

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WagnerOutcome {
    Keep,
    Eliminate { witness: usize },
    NotApplicable,
}

/// Congruence test at a totally ramified prime: for o(u) = p^j * m with
/// m != 1, the sums of eps over classes with x^{p^j} in a fixed class s must
/// agree with eps_s(u^{p^j}) modulo the ramified prime ideal.
pub fn wagner_filter(
    t: &CharacterTable,
    case: &TorsionCase,
    p: u32,
    j: u32,
) -> Result<WagnerOutcome, HelpError> {
    let n = case.order;
    let pj = p.checked_pow(j).filter(|&pj| n % pj == 0 && n / pj != 1);
    let Some(pj) = pj else {
        return Ok(WagnerOutcome::NotApplicable);
    };
    let c = case.conductor.max(1);
    if !is_totally_ramified(p, c) {
        return Ok(WagnerOutcome::NotApplicable);
    }
    let top = case.tower.get(&1).ok_or(HelpError::IncompleteTower { missing: 1 })?;
    let sub = case.tower.get(&pj).ok_or(HelpError::IncompleteTower { missing: pj })?;
    for s in 0..t.num_classes() {
        let mut sum = CycNumber::zero(1);
        for (&x, eps) in &top.values {
            if t.power_class(x, pj as u64)? == s {
                sum = sum.add(eps);
            }
        }
        let diff = sum.sub(&sub.value(s)).lift_to_conductor(c)?;
        if diff.residue_mod_p(p)? != 0 {
            return Ok(WagnerOutcome::Eliminate { witness: s });
        }
    }
    Ok(WagnerOutcome::Keep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientOutcome {
    Keep,
    Eliminate,
}

/// PA of v^j for j coprime to the order of v: Galois image with classes
/// permuted by x -> x^j.
fn galois_power_image(
    t: &CharacterTable,
    dist: &PADistribution,
    j: u32,
) -> Result<BTreeMap<usize, CycNumber>, HelpError> {
    let o = dist.order;
    let mut out = BTreeMap::new();
    for (&cls, eps) in &dist.values {
        let target = t.power_class(cls, j as u64)?;
        let val = eps.galois_apply_mod_order(j as i64, o)?;
        let entry = out.entry(target).or_insert_with(|| CycNumber::zero(1));
        *entry = entry.add(&val);
    }
    out.retain(|_, c: &mut CycNumber| !c.is_zero());
    Ok(out)
}

/// Projects the tower through a quotient fusion and keeps the case only when
/// the projected tower is consistent with some survivor of the quotient of
/// some order dividing n.
pub fn quotient_filter(
    case: &TorsionCase,
    f: &QuotientFusion,
    tgt: &CharacterTable,
    quotient_sets: &BTreeMap<u32, Vec<TorsionCase>>,
) -> Result<QuotientOutcome, HelpError> {
    let n = case.order;
    // fused tower
    let mut projected: BTreeMap<u32, BTreeMap<usize, CycNumber>> = BTreeMap::new();
    for (&d, dist) in &case.tower {
        let mut fused: BTreeMap<usize, CycNumber> = BTreeMap::new();
        for (&cls, eps) in &dist.values {
            let target = f.class_map[cls];
            let entry = fused.entry(target).or_insert_with(|| CycNumber::zero(1));
            *entry = entry.add(eps);
        }
        fused.retain(|_, c| !c.is_zero());
        projected.insert(d, fused);
    }
    for k in divisors(n) {
        let survivors =
            quotient_sets.get(&k).ok_or(HelpError::MissingQuotientData { order: k })?;
        'sv: for sv in survivors {
            for d in divisors(n) {
                let g = gcd(d, k);
                let sub = sv.tower.get(&g).ok_or(HelpError::IncompleteTower { missing: g })?;
                let expected = galois_power_image(tgt, sub, d / g)?;
                if projected[&d] != expected {
                    continue 'sv;
                }
            }
            return Ok(QuotientOutcome::Keep);
        }
    }
    Ok(QuotientOutcome::Eliminate)
}

// ---------------------------------------------------------------------------
// tower solving

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Classification {
    Trivial,
    NontrivialSurvivors(usize),
    NoSolutions,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Eliminated {
    pub help: usize,
    pub wagner: usize,
    pub quotient: usize,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub group_id: String,
    pub order: u32,
    pub conductor: u32,
    pub survivors: Vec<TorsionCase>,
    pub eliminated: Eliminated,
    pub classification: Classification,
    class_names: Vec<String>,
}

impl SolveReport {
    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }
}

impl Serialize for SolveReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct TowerJson<'a>(&'a TorsionCase, &'a [String]);
        impl Serialize for TowerJson<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut outer = serializer.serialize_map(Some(1))?;
                struct Inner<'a>(&'a TorsionCase, &'a [String]);
                impl Serialize for Inner<'_> {
                    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                        let mut m = serializer.serialize_map(Some(self.0.tower.len()))?;
                        for (d, dist) in &self.0.tower {
                            struct Dist<'a>(&'a PADistribution, &'a [String]);
                            impl Serialize for Dist<'_> {
                                fn serialize<S: Serializer>(
                                    &self,
                                    serializer: S,
                                ) -> Result<S::Ok, S::Error> {
                                    let mut m =
                                        serializer.serialize_map(Some(self.0.values.len()))?;
                                    for (cls, v) in &self.0.values {
                                        m.serialize_entry(&self.1[*cls], &v.minimal())?;
                                    }
                                    m.end()
                                }
                            }
                            m.serialize_entry(&d.to_string(), &Dist(dist, self.1))?;
                        }
                        m.end()
                    }
                }
                outer.serialize_entry("tower", &Inner(self.0, self.1))?;
                outer.end()
            }
        }
        struct Survivors<'a>(&'a [TorsionCase], &'a [String]);
        impl Serialize for Survivors<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for c in self.0 {
                    seq.serialize_element(&TowerJson(c, self.1))?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("SolveReport", 6)?;
        st.serialize_field("group_id", &self.group_id)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("survivors", &Survivors(&self.survivors, &self.class_names))?;
        st.serialize_field("eliminated", &self.eliminated)?;
        st.serialize_field("classification", &self.classification)?;
        st.end()
    }
}

/// Classification of a survivor set: Trivial when every survivor is the tower
/// of a group element, NoSolutions when empty.
pub fn classify(t: &CharacterTable, survivors: &[TorsionCase]) -> Classification {
    if survivors.is_empty() {
        return Classification::NoSolutions;
    }
    let nontrivial = survivors.iter().filter(|c| !c.is_trivial(t)).count();
    if nontrivial == 0 {
        Classification::Trivial
    } else {
        Classification::NontrivialSurvivors(nontrivial)
    }
}

#[derive(Debug, Clone)]
pub struct GenBpEntry {
    /// element order m -> eps_{G[m]} (sum of eps over classes of order m)
    pub eps: BTreeMap<u32, CycNumber>,
    pub consistent: bool,
}

/// Per survivor, the order-block sums of partial augmentations and whether
/// they vanish away from the unit's own order.
pub fn genbp_report(t: &CharacterTable, r: &SolveReport) -> Vec<GenBpEntry> {
    r.survivors
        .iter()
        .map(|case| {
            let top = &case.tower[&1];
            let mut eps: BTreeMap<u32, CycNumber> = BTreeMap::new();
            for (&cls, v) in &top.values {
                let m = t.classes[cls].element_order;
                let entry = eps.entry(m).or_insert_with(|| CycNumber::zero(1));
                *entry = entry.add(v);
            }
            eps.retain(|_, v| !v.is_zero());
            let consistent = eps.keys().all(|&m| m == case.order);
            GenBpEntry { eps, consistent }
        })
        .collect()
}

pub struct QuotientData {
    pub fusion: QuotientFusion,
    pub solver: Box<Solver>,
}

/// Memoizing driver: survivor sets per (order, reduced conductor), assembled
/// into towers along the divisor lattice.
pub struct Solver {
    pub table: CharacterTable,
    pub wagner: bool,
    pub brauer: Option<u32>,
    pub quotients: Vec<QuotientData>,
    memo: Mutex<HashMap<(u32, u32), Arc<Vec<TorsionCase>>>>,
}

impl Solver {
    pub fn new(table: CharacterTable) -> Self {
        Solver { table, wagner: true, brauer: None, quotients: Vec::new(), memo: Mutex::new(HashMap::new()) }
    }

    pub fn set_wagner(&mut self, on: bool) {
        self.wagner = on;
    }

    pub fn set_brauer(&mut self, p: Option<u32>) {
        self.brauer = p;
    }

    pub fn add_quotient(&mut self, fusion: QuotientFusion, target: CharacterTable) {
        let mut sub = Solver::new(target);
        sub.wagner = self.wagner;
        self.quotients.push(QuotientData { fusion, solver: Box::new(sub) });
    }

    /// Memoized survivor set for a unit of order n over Z[zeta_gcd(n,m)].
    pub fn survivors(&self, n: u32, m: u32) -> Result<Arc<Vec<TorsionCase>>, HelpError> {
        let key = (n, gcd(n, m.max(1)));
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let (cases, _) = self.survivors_counted(n, m)?;
        let arc = Arc::new(cases);
        self.memo.lock().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    fn survivors_counted(&self, n: u32, m: u32) -> Result<(Vec<TorsionCase>, Eliminated), HelpError> {
        let c = gcd(n, m.max(1));
        let mut counts = Eliminated::default();
        if n == 1 {
            let case = TorsionCase { order: 1, conductor: 1, tower: Tower::from([(1, PADistribution::identity(0))]) };
            return Ok((vec![case], counts));
        }
        if self.table.exponent % n != 0 {
            return Ok((Vec::new(), counts));
        }
        let primes = prime_factors(n);
        let mut subs: Vec<(u32, Arc<Vec<TorsionCase>>)> = Vec::new();
        for &p in &primes {
            subs.push((p, self.survivors(n / p, m)?));
        }
        // quotient survivor sets computed up front at the same outer conductor
        let mut quotient_sets: Vec<BTreeMap<u32, Vec<TorsionCase>>> = Vec::new();
        for q in &self.quotients {
            let mut sets = BTreeMap::new();
            for k in divisors(n) {
                sets.insert(k, q.solver.survivors(k, m)?.as_ref().clone());
            }
            quotient_sets.push(sets);
        }
        let mut cases: Vec<TorsionCase> = Vec::new();
        let charset = match self.brauer {
            Some(p) if n % p != 0 => Charset::OrdinaryAndBrauer(p),
            _ => Charset::Ordinary,
        };
        for tower in assemble_towers(n, &subs) {
            let system = build_system(&self.table, n, c, &tower, charset)?;
            let sols = enumerate(&system)?;
            if sols.is_empty() {
                counts.help += 1; // candidate tower ruled out by the system itself
                continue;
            }
            for pa in sols {
                let mut full = tower.clone();
                full.insert(1, pa);
                cases.push(TorsionCase { order: n, conductor: c, tower: full });
            }
        }
        // A case whose tower consists entirely of nonnegative rational
        // integers describes a unit rationally conjugate to a group element,
        // which must then be the trivial tower of a class of order n; any
        // other all-nonnegative case is impossible for a unit of order n.
        cases.retain(|case| {
            let nonneg = case.tower.values().all(|dist| {
                dist.values.values().all(|v| {
                    v.as_rational().map(|r| r.is_integer() && !r.is_negative()).unwrap_or(false)
                })
            });
            if nonneg && !case.is_trivial(&self.table) {
                counts.help += 1;
                false
            } else {
                true
            }
        });
        if self.wagner {
            let mut kept = Vec::new();
            'case: for case in cases {
                for &p in &primes {
                    let mut pj = p;
                    let mut j = 1;
                    while n % pj == 0 {
                        if n / pj != 1 {
                            if let WagnerOutcome::Eliminate { .. } =
                                wagner_filter(&self.table, &case, p, j)?
                            {
                                counts.wagner += 1;
                                continue 'case;
                            }
                        }
                        match pj.checked_mul(p) {
                            Some(next) => pj = next,
                            None => break,
                        }
                        j += 1;
                    }
                }
                kept.push(case);
            }
            cases = kept;
        }
        for (q, sets) in self.quotients.iter().zip(&quotient_sets) {
            let mut kept = Vec::new();
            for case in cases {
                match quotient_filter(&case, &q.fusion, &q.solver.table, sets)? {
                    QuotientOutcome::Keep => kept.push(case),
                    QuotientOutcome::Eliminate => counts.quotient += 1,
                }
            }
            cases = kept;
        }
        cases.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        Ok((cases, counts))
    }

    /// Full run for order n over Z[zeta_m]: recursive survivor computation,
    /// filters, classification.
    pub fn solve_tower(&self, n: u32, m: u32) -> Result<SolveReport, HelpError> {
        let (survivors, eliminated) = self.survivors_counted(n, m)?;
        let key = (n, gcd(n, m.max(1)));
        self.memo.lock().unwrap().entry(key).or_insert_with(|| Arc::new(survivors.clone()));
        let classification = classify(&self.table, &survivors);
        Ok(SolveReport {
            group_id: self.table.id.clone(),
            order: n,
            conductor: m,
            survivors,
            eliminated,
            classification,
            class_names: self.table.classes.iter().map(|ci| ci.name.clone()).collect(),
        })
    }
}

/// All compatible towers of order n assembled from the survivor sets of the
/// maximal proper divisor orders n/p.
fn assemble_towers(n: u32, subs: &[(u32, Arc<Vec<TorsionCase>>)]) -> Vec<Tower> {
    let mut towers = Vec::new();
    let mut choice = vec![0usize; subs.len()];
    if subs.iter().any(|(_, s)| s.is_empty()) {
        return towers;
    }
    loop {
        let picked: Vec<(u32, &TorsionCase)> =
            subs.iter().zip(&choice).map(|((p, s), &i)| (*p, &s[i])).collect();
        let mut tower = Tower::new();
        let mut ok = true;
        'd: for d in divisors(n) {
            if d == 1 {
                continue;
            }
            let mut entry: Option<&PADistribution> = None;
            for &(p, case) in &picked {
                if d % p != 0 {
                    continue;
                }
                let sub = &case.tower[&(d / p)];
                match entry {
                    None => entry = Some(sub),
                    Some(e) if e == sub => {}
                    Some(_) => {
                        ok = false;
                        break 'd;
                    }
                }
            }
            tower.insert(d, entry.expect("every d > 1 has a prime factor").clone());
        }
        if ok {
            towers.push(tower);
        }
        // next choice in the cartesian product
        let mut k = 0;
        loop {
            if k == subs.len() {
                return towers;
            }
            choice[k] += 1;
            if choice[k] < subs[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn s4() -> CharacterTable {
        fixtures::load_table("S4").unwrap()
    }

    fn chi_index(t: &CharacterTable, first_values: &[i64]) -> usize {
        t.irreducibles
            .iter()
            .position(|r| {
                first_values
                    .iter()
                    .enumerate()
                    .all(|(k, &v)| r[k] == CycNumber::from_integer(v))
            })
            .expect("character present")
    }

    fn s4_order4_tower(t: &CharacterTable) -> Tower {
        let c2b = t.class_by_name("2b").unwrap();
        Tower::from([
            (2, PADistribution::indicator(2, c2b)),
            (4, PADistribution::identity(0)),
        ])
    }

    /// alpha for (eps_2a, eps_2b, eps_4a) = (i, 1, -i) in variable order
    /// (2a,0),(2a,1),(2b,0),(2b,1),(4a,0),(4a,1)
    const CASE1: [i64; 6] = [0, 1, 1, 0, 0, -1];

    fn case1(t: &CharacterTable) -> TorsionCase {
        let i = CycNumber::make_root(4, 1);
        let values = BTreeMap::from([
            (t.class_by_name("2a").unwrap(), i.clone()),
            (t.class_by_name("2b").unwrap(), CycNumber::one()),
            (t.class_by_name("4a").unwrap(), i.neg()),
        ]);
        let mut tower = s4_order4_tower(t);
        tower.insert(1, PADistribution { order: 4, values });
        TorsionCase { order: 4, conductor: 4, tower }
    }

    #[test]
    fn layout_s4() {
        let t = s4();
        let vars = variable_layout(&t, 4, 4);
        assert_eq!(vars.len(), 6);
        assert!(variable_layout(&t, 6, 6).len() > 0);
    }

    #[test]
    fn known_part_s4_examples() {
        let t = s4();
        let tower = s4_order4_tower(&t);
        let chi3a = chi_index(&t, &[3, -1]);
        assert_eq!(known_part(&t, chi3a, 0, &tower, 4).unwrap(), 2);
        assert_eq!(known_part(&t, chi3a, 1, &tower, 4).unwrap(), 4);
    }

    #[test]
    fn known_part_prime_order_is_degree() {
        let t = s4();
        let tower = Tower::from([(3, PADistribution::identity(0))]);
        for chi in 0..t.irreducibles.len() {
            assert_eq!(known_part(&t, chi, 0, &tower, 3).unwrap(), t.degree(chi));
        }
    }

    #[test]
    fn system_shape_and_case1_satisfies() {
        let t = s4();
        let tower = s4_order4_tower(&t);
        let s = build_system(&t, 4, 4, &tower, Charset::Ordinary).unwrap();
        assert_eq!(s.rows.len(), 20);
        assert_eq!(s.eqs.len(), 2);
        assert_eq!(s.variables.len(), 6);
        assert!(check_exact(&s, &CASE1));
        // the trivial 4a distribution also satisfies every row
        let c4a = t.class_by_name("4a").unwrap();
        let pos = s.variables.iter().position(|v| v.class == c4a && v.exponent == 0).unwrap();
        let mut trivial = vec![0i64; 6];
        trivial[pos] = 1;
        assert!(check_exact(&s, &trivial));
    }

    #[test]
    fn enumerate_s4_conductor_1() {
        // Over Z the inequality system still admits two impostors whose
        // distribution sits on an involution class; the ramified-prime
        // congruence at p = 2 removes them (see wagner tests and the
        // conductor-1 solve below).
        let t = s4();
        let tower = Tower::from([
            (2, PADistribution::indicator(2, t.class_by_name("2b").unwrap())),
            (4, PADistribution::identity(0)),
        ]);
        let s = build_system(&t, 4, 1, &tower, Charset::Ordinary).unwrap();
        let sols = enumerate(&s).unwrap();
        let c2a = t.class_by_name("2a").unwrap();
        let c2b = t.class_by_name("2b").unwrap();
        let c4a = t.class_by_name("4a").unwrap();
        assert_eq!(
            sols,
            vec![
                PADistribution::indicator(4, c4a),
                PADistribution::indicator(4, c2b),
                PADistribution::indicator(4, c2a),
            ]
        );
        let case = |cls: usize| TorsionCase {
            order: 4,
            conductor: 1,
            tower: {
                let mut tw = tower.clone();
                tw.insert(1, PADistribution::indicator(4, cls));
                tw
            },
        };
        assert!(matches!(
            wagner_filter(&t, &case(c2b), 2, 1).unwrap(),
            WagnerOutcome::Eliminate { .. }
        ));
        assert!(matches!(
            wagner_filter(&t, &case(c2a), 2, 1).unwrap(),
            WagnerOutcome::Eliminate { .. }
        ));
        assert_eq!(wagner_filter(&t, &case(c4a), 2, 1).unwrap(), WagnerOutcome::Keep);
    }

    #[test]
    fn bounds_are_modest_for_s4() {
        let t = s4();
        let s = build_system(&t, 4, 4, &s4_order4_tower(&t), Charset::Ordinary).unwrap();
        for (l, h) in derive_bounds(&s).unwrap() {
            assert!(l >= -12 && h <= 12, "bounds ({l},{h}) out of expected range");
        }
    }

    #[test]
    fn empty_system_unbounded() {
        let s = ConstraintSystem {
            order: 2,
            conductor: 1,
            variables: vec![Variable { class: 1, exponent: 0 }],
            rows: vec![],
            eqs: vec![],
        };
        assert!(matches!(derive_bounds(&s), Err(HelpError::Unbounded { .. })));
    }

    #[test]
    fn wagner_keeps_case1_eliminates_synthetic() {
        let t = s4();
        let case = case1(&t);
        assert_eq!(wagner_filter(&t, &case, 2, 1).unwrap(), WagnerOutcome::Keep);
        // (eps_2a, eps_2b, eps_4a) = (1+i, -1, 1-i)
        let i = CycNumber::make_root(4, 1);
        let mut bad = case.clone();
        bad.tower.insert(
            1,
            PADistribution {
                order: 4,
                values: BTreeMap::from([
                    (t.class_by_name("2a").unwrap(), CycNumber::one().add(&i)),
                    (t.class_by_name("2b").unwrap(), CycNumber::from_integer(-1)),
                    (t.class_by_name("4a").unwrap(), CycNumber::one().sub(&i)),
                ]),
            },
        );
        assert!(matches!(
            wagner_filter(&t, &bad, 2, 1).unwrap(),
            WagnerOutcome::Eliminate { .. }
        ));
        // inapplicable shapes
        assert_eq!(wagner_filter(&t, &case, 2, 2).unwrap(), WagnerOutcome::NotApplicable);
        assert_eq!(wagner_filter(&t, &case, 3, 1).unwrap(), WagnerOutcome::NotApplicable);
    }

    #[test]
    fn quotient_keeps_case1() {
        let t = s4();
        let s3 = fixtures::load_table("S3").unwrap();
        let fusion = fixtures::load_fusion("fusion_S4_S3").unwrap();
        let sub = Solver::new(s3);
        let mut sets = BTreeMap::new();
        for k in divisors(4) {
            sets.insert(k, sub.survivors(k, 4).unwrap().as_ref().clone());
        }
        let case = case1(&t);
        assert_eq!(
            quotient_filter(&case, &fusion, &sub.table, &sets).unwrap(),
            QuotientOutcome::Keep
        );
        // a synthetic non-unit case: eps_1a = 1 + i upstairs fuses to nothing
        let mut bad = case.clone();
        bad.tower.insert(
            1,
            PADistribution {
                order: 4,
                values: BTreeMap::from([(0, CycNumber::one().add(&CycNumber::make_root(4, 1)))]),
            },
        );
        assert_eq!(
            quotient_filter(&bad, &fusion, &sub.table, &sets).unwrap(),
            QuotientOutcome::Eliminate
        );
    }

    #[test]
    fn solve_s4_order4_conductor4() {
        let t = s4();
        let solver = Solver::new(t);
        let report = solver.solve_tower(4, 4).unwrap();
        assert_eq!(report.classification, Classification::NontrivialSurvivors(4));
        assert_eq!(report.survivors.len(), 5);
        // Case 1 must be among them
        let c1 = case1(&solver.table);
        assert!(report.survivors.contains(&c1));
        // all nontrivial survivors have u^2 ~ 2b
        let c2b = solver.table.class_by_name("2b").unwrap();
        for sv in report.survivors.iter().filter(|s| !s.is_trivial(&solver.table)) {
            assert_eq!(sv.tower[&2], PADistribution::indicator(2, c2b));
        }
    }

    #[test]
    fn solve_s4_order4_conductor1_trivial() {
        let solver = Solver::new(s4());
        let report = solver.solve_tower(4, 1).unwrap();
        assert_eq!(report.classification, Classification::Trivial);
    }

    #[test]
    fn solve_s4_order5_no_solutions() {
        let solver = Solver::new(s4());
        let report = solver.solve_tower(5, 5).unwrap();
        assert_eq!(report.classification, Classification::NoSolutions);
    }

    #[test]
    fn genbp_flags_case1() {
        let solver = Solver::new(s4());
        let report = solver.solve_tower(4, 4).unwrap();
        let entries = genbp_report(&solver.table, &report);
        let c1 = case1(&solver.table);
        let idx = report.survivors.iter().position(|s| *s == c1).unwrap();
        let e = &entries[idx];
        assert!(!e.consistent);
        assert_eq!(e.eps[&2], CycNumber::one().add(&CycNumber::make_root(4, 1)));
        assert_eq!(e.eps[&4], CycNumber::make_root(4, 1).neg());
        // the trivial survivor is consistent
        let triv = report.survivors.iter().position(|s| s.is_trivial(&solver.table)).unwrap();
        assert!(entries[triv].consistent);
    }

    #[test]
    fn report_json_shape() {
        let solver = Solver::new(s4());
        let report = solver.solve_tower(4, 4).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.starts_with("{\"group_id\":\"S4\",\"order\":4,\"conductor\":4,"));
        assert!(json.contains("\"classification\":{\"NontrivialSurvivors\":4}"));
        assert!(json.contains("\"eliminated\":{\"help\":"));
        // determinism
        let again = serde_json::to_string(&solver.solve_tower(4, 4).unwrap()).unwrap();
        assert_eq!(json, again);
    }

    #[test]
    fn galois_closure_of_s4_survivors() {
        let solver = Solver::new(s4());
        let report = solver.solve_tower(4, 4).unwrap();
        // sigma: i -> -i maps survivors to survivors
        for sv in &report.survivors {
            let mapped: Tower = sv
                .tower
                .iter()
                .map(|(&d, dist)| {
                    let values = dist
                        .values
                        .iter()
                        .map(|(&c, v)| (c, v.galois_apply_mod_order(3, 4).unwrap().minimal()))
                        .collect();
                    (d, PADistribution { order: dist.order, values })
                })
                .collect();
            let mapped = TorsionCase { order: 4, conductor: 4, tower: mapped };
            assert!(report.survivors.contains(&mapped), "Galois image missing");
        }
    }
}
