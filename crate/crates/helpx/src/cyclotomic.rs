//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! Elements are stored in the power basis 1, zeta, ..., zeta^(phi(n)-1) after
//! reduction by the n-th cyclotomic polynomial, with arbitrary-precision
//! rational coordinates. The power basis is an integral basis of Z[zeta_n],
//! so integrality is a coordinate-wise check.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};
use once_cell::sync::Lazy;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("galois index {j} is not coprime to conductor {n}")]
    NonCoprimeIndex { j: i64, n: u32 },
    #[error("element does not lie in Q(zeta_{m})")]
    NotInSubfield { m: u32 },
    #[error("conductor {from} does not divide {to}")]
    ConductorMismatch { from: u32, to: u32 },
    #[error("residue map not applicable: {p} is not totally ramified in Z[zeta_{n}]")]
    NotApplicable { p: u32, n: u32 },
    #[error("element is not integral")]
    NotIntegral,
}

pub fn phi(n: u32) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

pub fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a / a.gcd(&b) * b
}

pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Coefficients of the n-th cyclotomic polynomial, constant term first,
/// computed by repeated exact division of x^n - 1 and memoized.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static CACHE: Lazy<Mutex<HashMap<u32, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));
    if let Some(p) = CACHE.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut poly: Vec<BigInt> = vec![BigInt::from(-1)];
    poly.extend(std::iter::repeat_with(BigInt::zero).take(n as usize - 1));
    poly.push(BigInt::one());
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_polynomial(d);
            poly = poly_div_exact(&poly, &q);
        }
    }
    CACHE.lock().unwrap().insert(n, poly.clone());
    poly
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // both monic up to sign of leading coeff of b (cyclotomics are monic)
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let mut quot = vec![BigInt::zero(); rem.len() - db];
    while rem.len() > db {
        let lead = rem.last().unwrap().clone();
        let deg = rem.len() - 1 - db;
        if !lead.is_zero() {
            quot[deg] = lead.clone();
            for (i, bc) in b.iter().enumerate() {
                rem[deg + i] -= &lead * bc;
            }
        }
        rem.pop();
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Exact element of Q(zeta_n) in the power basis.
#[derive(Clone)]
pub struct CycNumber {
    conductor: u32,
    coords: Vec<BigRational>,
}

impl CycNumber {
    pub fn new(conductor: u32, coords: Vec<BigRational>) -> Self {
        assert!(conductor >= 1);
        assert_eq!(coords.len(), phi(conductor), "coords length must be phi(n)");
        CycNumber { conductor, coords }
    }

    pub fn zero(conductor: u32) -> Self {
        CycNumber::new(conductor, vec![BigRational::zero(); phi(conductor)])
    }

    pub fn one() -> Self {
        CycNumber::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        CycNumber { conductor: 1, coords: vec![r] }
    }

    pub fn from_integer(k: i64) -> Self {
        CycNumber::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// zeta_n^k reduced to the power basis (k taken mod n).
    pub fn make_root(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let k = k.rem_euclid(n as i64) as usize;
        let ph = phi(n);
        if k < ph {
            let mut coords = vec![BigRational::zero(); ph];
            coords[k] = BigRational::one();
            return CycNumber { conductor: n, coords };
        }
        // reduce x^k mod Phi_n
        let mut poly = vec![BigRational::zero(); k + 1];
        poly[k] = BigRational::one();
        let coords = reduce_mod_phi(poly, n);
        CycNumber { conductor: n, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    pub fn add(&self, other: &CycNumber) -> CycNumber {
        let n = lcm(self.conductor, other.conductor);
        let a = self.lift_to_conductor(n).unwrap();
        let b = other.lift_to_conductor(n).unwrap();
        let coords = a
            .coords
            .iter()
            .zip(b.coords.iter())
            .map(|(x, y)| x + y)
            .collect();
        CycNumber { conductor: n, coords }
    }

    pub fn sub(&self, other: &CycNumber) -> CycNumber {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn scalar_mul(&self, r: &BigRational) -> CycNumber {
        CycNumber {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, other: &CycNumber) -> CycNumber {
        let n = lcm(self.conductor, other.conductor);
        let a = self.lift_to_conductor(n).unwrap();
        let b = other.lift_to_conductor(n).unwrap();
        let mut prod = vec![BigRational::zero(); a.coords.len() + b.coords.len() - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let coords = reduce_mod_phi(prod, n);
        CycNumber { conductor: n, coords }
    }

    /// Image of the element under zeta_n -> zeta_n^j, for gcd(j, n) = 1.
    pub fn galois_apply(&self, j: i64) -> Result<CycNumber, CycError> {
        let n = self.conductor;
        if n == 1 {
            return Ok(self.clone());
        }
        let jr = j.rem_euclid(n as i64) as u32;
        if gcd(jr, n) != 1 {
            return Err(CycError::NonCoprimeIndex { j, n });
        }
        let mut poly = vec![BigRational::zero(); (n as usize - 1) * (self.coords.len() - 1) + 1];
        let mut max_deg = 0usize;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (k as u64 * jr as u64 % n as u64) as usize;
            if e >= poly.len() {
                poly.resize(e + 1, BigRational::zero());
            }
            poly[e] += c;
            max_deg = max_deg.max(e);
        }
        poly.truncate(max_deg + 1);
        let coords = reduce_mod_phi(poly, n);
        Ok(CycNumber { conductor: n, coords })
    }

    /// Same element at a larger conductor m (n | m).
    pub fn lift_to_conductor(&self, m: u32) -> Result<CycNumber, CycError> {
        let n = self.conductor;
        if m % n != 0 {
            return Err(CycError::ConductorMismatch { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let s = (m / n) as usize;
        let mut poly = vec![BigRational::zero(); (self.coords.len() - 1) * s + 1];
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                poly[k * s] += c;
            }
        }
        let coords = reduce_mod_phi(poly, m);
        Ok(CycNumber { conductor: m, coords })
    }

    /// Same element at a smaller conductor m (m | n), or None when the
    /// element does not lie in Q(zeta_m).
    pub fn try_descend(&self, m: u32) -> Result<Option<CycNumber>, CycError> {
        let n = self.conductor;
        if n % m != 0 {
            return Err(CycError::ConductorMismatch { from: n, to: m });
        }
        if m == n {
            return Ok(Some(self.clone()));
        }
        // solve sum_j y_j * lift(zeta_m^j) = self over Q
        let phm = phi(m);
        let phn = phi(n);
        let mut cols: Vec<Vec<BigRational>> = Vec::with_capacity(phm);
        for j in 0..phm {
            let basis = CycNumber::make_root(m, j as i64).lift_to_conductor(n).unwrap();
            cols.push(basis.coords);
        }
        // gaussian elimination on the phn x (phm+1) augmented system
        let mut aug: Vec<Vec<BigRational>> = (0..phn)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
                row.push(self.coords[i].clone());
                row
            })
            .collect();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0usize;
        for c in 0..phm {
            let Some(pr) = (r..phn).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, pr);
            let inv = aug[r][c].clone();
            for v in aug[r].iter_mut() {
                *v = &*v / &inv;
            }
            for i in 0..phn {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j2 in 0..=phm {
                        let sub = &aug[r][j2] * &f;
                        aug[i][j2] -= sub;
                    }
                }
            }
            pivots.push((r, c));
            r += 1;
        }
        // consistency: all remaining rows must have zero rhs
        for i in r..phn {
            if !aug[i][phm].is_zero() {
                return Ok(None);
            }
        }
        let mut y = vec![BigRational::zero(); phm];
        for &(ri, ci) in &pivots {
            y[ci] = aug[ri][phm].clone();
        }
        Ok(Some(CycNumber { conductor: m, coords: y }))
    }

    /// Same element at its least conductor.
    pub fn minimal(&self) -> CycNumber {
        for d in divisors(self.conductor) {
            if let Ok(Some(x)) = self.try_descend(d) {
                return x;
            }
        }
        self.clone()
    }

    /// Tr over Q(zeta_n^d)/Q of an element that lies in that subfield
    /// (the conductor of zeta_n^d is n/gcd(n, d)).
    pub fn trace_to_q(&self, d: u32) -> Result<BigRational, CycError> {
        let n = self.conductor;
        let g = if d == 0 { n } else { gcd(n, d) };
        let cc = n / g;
        let x = match self.try_descend(cc) {
            Ok(Some(x)) => x,
            Ok(None) => return Err(CycError::NotInSubfield { m: cc }),
            Err(e) => return Err(e),
        };
        let mut total = CycNumber::zero(cc);
        for j in 1..=cc {
            if num::integer::gcd(j as i64, cc as i64) == 1 {
                total = total.add(&x.galois_apply(j as i64)?);
            }
        }
        debug_assert!(total.is_rational(), "trace must be rational");
        Ok(total.coords[0].clone())
    }

    /// All coordinates integral (equivalently, the element lies in Z[zeta_n]).
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.denom().is_one())
    }

    /// Image in O/p ~ F_p for p totally ramified in Z[zeta_n]: determined by
    /// zeta_{p^a} -> 1 and (odd p, even conductor) zeta_2 -> -1.
    pub fn residue_mod_p(&self, p: u32) -> Result<u32, CycError> {
        let n = self.conductor;
        if !is_totally_ramified_or_trivial(p, n) {
            return Err(CycError::NotApplicable { p, n });
        }
        if !self.is_integral() {
            return Err(CycError::NotIntegral);
        }
        // residue of zeta_n: 1 if n is a power of p (or 1), -1 if n = 2 p^a (p odd) or n = 2
        let r: i64 = if n % 2 == 0 && p != 2 {
            -1
        } else {
            1
        };
        let pp = p as i64;
        let mut acc: i64 = 0;
        let mut rk: i64 = 1;
        for c in &self.coords {
            let ci = c.to_integer();
            let cm = (&ci % pp + pp) % pp;
            let cm: i64 = cm.try_into().unwrap();
            acc = (acc + cm * rk).rem_euclid(pp);
            rk = (rk * r).rem_euclid(pp);
        }
        Ok(acc as u32)
    }

    /// Floating-point complex value; test oracle only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coords.iter().enumerate() {
            let v = rational_to_f64(c);
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
            re += v * theta.cos();
            im += v * theta.sin();
        }
        (re, im)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // exact enough for oracle use on small fixtures
    let nf: f64 = num.to_string().parse().unwrap();
    let df: f64 = den.to_string().parse().unwrap();
    nf / df
}

/// True iff p is totally ramified in Z[zeta_n]: n = p^a * m with phi(m) = 1.
pub fn is_totally_ramified(p: u32, n: u32) -> bool {
    assert!(n >= 1 && p >= 2);
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    phi(m) == 1
}

/// Like [`is_totally_ramified`] but also admits conductors not divisible by p
/// (n in {1, 2}), where the coefficient ring is Z and the residue map is
/// plain reduction mod p.
fn is_totally_ramified_or_trivial(p: u32, n: u32) -> bool {
    is_totally_ramified(p, n)
}

fn reduce_mod_phi(mut poly: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let ph = phi(n);
    let modp = cyclotomic_polynomial(n);
    while poly.len() > ph {
        let lead = poly.pop().unwrap();
        if lead.is_zero() {
            continue;
        }
        let deg = poly.len() - ph; // position offset for subtraction
        for (i, c) in modp.iter().take(ph).enumerate() {
            let term = &lead * BigRational::from_integer(c.clone());
            poly[deg + i] -= term;
        }
    }
    poly.resize(ph, BigRational::zero());
    poly
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        let n = lcm(self.conductor, other.conductor);
        let a = self.lift_to_conductor(n).unwrap();
        let b = other.lift_to_conductor(n).unwrap();
        a.coords == b.coords
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc(n={}, [", self.conductor)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "])")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.minimal();
        if m.conductor == 1 {
            return write!(f, "{}", m.coords[0]);
        }
        let mut first = true;
        for (k, c) in m.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z{}^{}", m.conductor, k)?;
            } else {
                write!(f, "{}*z{}^{}", c, m.conductor, k)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// JSON form: {"conductor": n, "coords": ["a/b", ...]} with bare integers allowed.
impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CycNumber", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        let coords: Vec<serde_json::Value> = self
            .coords
            .iter()
            .map(|c| {
                if c.denom().is_one() {
                    if let Some(i) = c.numer().try_into().ok().map(|v: i64| v) {
                        return serde_json::Value::from(i);
                    }
                }
                serde_json::Value::from(c.to_string())
            })
            .collect();
        st.serialize_field("coords", &coords)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            conductor: u32,
            coords: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        if raw.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let mut coords = Vec::with_capacity(raw.coords.len());
        for v in &raw.coords {
            coords.push(parse_rational(v).map_err(D::Error::custom)?);
        }
        if coords.len() != phi(raw.conductor) {
            return Err(D::Error::custom(format!(
                "coords length {} != phi({}) = {}",
                coords.len(),
                raw.conductor,
                phi(raw.conductor)
            )));
        }
        Ok(CycNumber { conductor: raw.conductor, coords })
    }
}

fn parse_rational(v: &serde_json::Value) -> Result<BigRational, String> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(BigRational::from_integer(BigInt::from(i)))
            } else {
                Err(format!("non-integer numeric coordinate {n}"))
            }
        }
        serde_json::Value::String(s) => {
            let s = s.trim();
            if let Some((a, b)) = s.split_once('/') {
                let num: BigInt = a.trim().parse().map_err(|e| format!("bad numerator: {e}"))?;
                let den: BigInt = b.trim().parse().map_err(|e| format!("bad denominator: {e}"))?;
                if den.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(BigRational::new(num, den))
            } else {
                let num: BigInt = s.parse().map_err(|e| format!("bad integer: {e}"))?;
                Ok(BigRational::from_integer(num))
            }
        }
        _ => Err(format!("coordinate must be number or string, got {v}")),
    }
}

pub fn rational_to_string(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
