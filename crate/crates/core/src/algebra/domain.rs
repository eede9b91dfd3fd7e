//! Scalar alphabets: prime and extension fields GF(p^n) in polynomial
//! representation, and the full matrix ring M_k(Z_p).
//!
//! Every alphabet is small (at most [`MAX_DOMAIN_SIZE`] symbols), so all
//! arithmetic is table driven. Symbols are encoded as `u16` indices:
//!
//! * field element `c0 + c1 x + ... + c_{n-1} x^{n-1}` has index `sum c_i p^i`;
//! * ring element with entries `m[r][c]` has index `sum m[r][c] p^(r*k + c)`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use super::AlgebraError;

/// Upper bound on alphabet size; tables are `size * size` entries.
pub const MAX_DOMAIN_SIZE: usize = 1024;

/// Marker in the inverse table for non-units.
const NO_INVERSE: u16 = u16::MAX;

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut f = 2u32;
    while f * f <= p {
        if p % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Remainder of `num` modulo the monic polynomial `den` over Z_p.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1, "divisor must be monic");
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_is_zero(a: &[u32]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Monic polynomials of the given degree, enumerated by their lower
/// coefficients in base-p counting order.
fn monic_polys(p: u32, degree: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(degree);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        coeffs.push(1);
        coeffs
    })
}

/// Irreducibility over Z_p by trial division with every monic polynomial of
/// degree at most half the input degree.
pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let n = poly.len() as u32 - 1;
    if n == 0 {
        return false;
    }
    for k in 1..=n / 2 {
        for g in monic_polys(p, k) {
            if poly_is_zero(&poly_rem(poly, &g, p)) {
                return false;
            }
        }
    }
    true
}

/// Description of GF(p^n): characteristic, degree and the reduction modulus
/// (monic, coefficient list low-to-high).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    characteristic: u32,
    degree: u32,
    modulus: Vec<u32>,
}

impl FieldSpec {
    /// GF(p^n) with the lexicographically smallest monic irreducible modulus,
    /// comparing coefficient lists low-to-high.
    pub fn new(p: u32, n: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::CompositeCharacteristic(p));
        }
        if n < 1 {
            return Err(AlgebraError::InvalidDegree(n));
        }
        let size = (p as u64).checked_pow(n).unwrap_or(u64::MAX);
        if size > MAX_DOMAIN_SIZE as u64 {
            return Err(AlgebraError::DomainTooLarge {
                size,
                max: MAX_DOMAIN_SIZE as u64,
            });
        }
        // c0 is the most significant position of the lexicographic order.
        for idx in 0..size {
            let mut rest = idx;
            let mut low_to_high = vec![0u32; n as usize];
            for i in (0..n as usize).rev() {
                low_to_high[i] = (rest % p as u64) as u32;
                rest /= p as u64;
            }
            low_to_high.push(1);
            if is_irreducible(&low_to_high, p) {
                return Ok(FieldSpec {
                    characteristic: p,
                    degree: n,
                    modulus: low_to_high,
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// Field with an explicitly chosen modulus.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::CompositeCharacteristic(p));
        }
        if modulus.len() < 2 {
            return Err(AlgebraError::InvalidDegree(0));
        }
        if *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(AlgebraError::Parse(format!(
                "modulus {modulus:?} is not a monic polynomial over Z_{p}"
            )));
        }
        if !is_irreducible(&modulus, p) {
            return Err(AlgebraError::Parse(format!(
                "modulus {modulus:?} is reducible over Z_{p}"
            )));
        }
        let degree = modulus.len() as u32 - 1;
        let size = (p as u64).checked_pow(degree).unwrap_or(u64::MAX);
        if size > MAX_DOMAIN_SIZE as u64 {
            return Err(AlgebraError::DomainTooLarge {
                size,
                max: MAX_DOMAIN_SIZE as u64,
            });
        }
        Ok(FieldSpec {
            characteristic: p,
            degree,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn size(&self) -> usize {
        (self.characteristic as usize).pow(self.degree)
    }
}

/// The ring of all k×k matrices over Z_p, used as a scalar alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    prime: u32,
    side: u32,
}

impl RingSpec {
    pub fn new(p: u32, k: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p) {
            return Err(AlgebraError::CompositeCharacteristic(p));
        }
        if k < 1 {
            return Err(AlgebraError::InvalidSide(k));
        }
        let size = (p as u64).checked_pow(k * k).unwrap_or(u64::MAX);
        if size > MAX_DOMAIN_SIZE as u64 {
            return Err(AlgebraError::DomainTooLarge {
                size,
                max: MAX_DOMAIN_SIZE as u64,
            });
        }
        Ok(RingSpec { prime: p, side: k })
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn side(&self) -> u32 {
        self.side
    }

    pub fn size(&self) -> usize {
        (self.prime as usize).pow(self.side * self.side)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Field(FieldSpec),
    Ring(RingSpec),
}

#[derive(Debug)]
struct Tables {
    kind: DomainKind,
    size: usize,
    /// Characteristic of the alphabet (p for both fields and M_k(Z_p)).
    prime: u32,
    /// Number of base-p digits in an index.
    digits: u32,
    one: u16,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// A coefficient alphabet with precomputed arithmetic tables. Cheap to clone
/// and shareable across threads.
#[derive(Clone)]
pub struct Domain(Arc<Tables>);

impl PartialEq for Domain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}

impl Eq for Domain {}

impl Hash for Domain {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.kind.hash(state)
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Domain({self})")
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            DomainKind::Field(fs) => write!(f, "{}^{}", fs.characteristic, fs.degree),
            DomainKind::Ring(rs) => write!(f, "ring:{},{}", rs.prime, rs.side),
        }
    }
}

impl FromStr for Domain {
    type Err = AlgebraError;

    /// Accepts `p`, `p^n` and `ring:p,k`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || AlgebraError::Parse(format!("bad domain `{s}` (expected p, p^n or ring:p,k)"));
        if let Some(rest) = s.strip_prefix("ring:") {
            let (p, k) = rest.split_once(',').ok_or_else(bad)?;
            let p: u32 = p.trim().parse().map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            return Domain::ring(p, k);
        }
        let (p, n) = match s.split_once('^') {
            Some((p, n)) => (p, n),
            None => (s, "1"),
        };
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let n: u32 = n.trim().parse().map_err(|_| bad())?;
        Domain::field(p, n)
    }
}

impl From<FieldSpec> for Domain {
    fn from(spec: FieldSpec) -> Self {
        Domain::from_field_spec(spec)
    }
}

impl From<RingSpec> for Domain {
    fn from(spec: RingSpec) -> Self {
        Domain::from_ring_spec(spec)
    }
}

impl Domain {
    /// GF(p^n) with the canonical modulus of [`FieldSpec::new`].
    pub fn field(p: u32, n: u32) -> Result<Self, AlgebraError> {
        Ok(Self::from_field_spec(FieldSpec::new(p, n)?))
    }

    /// Prime field Z_p.
    pub fn prime_field(p: u32) -> Result<Self, AlgebraError> {
        Self::field(p, 1)
    }

    /// The full matrix ring M_k(Z_p).
    pub fn ring(p: u32, k: u32) -> Result<Self, AlgebraError> {
        Ok(Self::from_ring_spec(RingSpec::new(p, k)?))
    }

    fn from_field_spec(spec: FieldSpec) -> Self {
        let p = spec.characteristic;
        let n = spec.degree as usize;
        let q = spec.size();
        let decode = |mut v: usize| -> Vec<u32> {
            let mut c = vec![0u32; n];
            for slot in c.iter_mut() {
                *slot = (v % p as usize) as u32;
                v /= p as usize;
            }
            c
        };
        let encode = |c: &[u32]| -> u16 {
            c.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize) as u16
        };
        let polys: Vec<Vec<u32>> = (0..q).map(decode).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<u32> = polys[a]
                    .iter()
                    .zip(&polys[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = encode(&sum);
                let mut prod = vec![0u32; 2 * n - 1];
                for (i, &x) in polys[a].iter().enumerate() {
                    for (j, &y) in polys[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly_rem(&prod, &spec.modulus, p);
                red.resize(n, 0);
                mul[a * q + b] = encode(&red);
            }
        }
        let kind = DomainKind::Field(spec);
        Domain(Arc::new(Self::finish(kind, q, p, n as u32, 1, add, mul)))
    }

    fn from_ring_spec(spec: RingSpec) -> Self {
        let p = spec.prime as usize;
        let k = spec.side as usize;
        let q = spec.size();
        let decode = |mut v: usize| -> Vec<usize> {
            let mut c = vec![0usize; k * k];
            for slot in c.iter_mut() {
                *slot = v % p;
                v /= p;
            }
            c
        };
        let encode =
            |c: &[usize]| -> u16 { c.iter().rev().fold(0usize, |acc, &d| acc * p + d) as u16 };
        let grids: Vec<Vec<usize>> = (0..q).map(decode).collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                let sum: Vec<usize> = grids[a]
                    .iter()
                    .zip(&grids[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                add[a * q + b] = encode(&sum);
                let mut prod = vec![0usize; k * k];
                for r in 0..k {
                    for c in 0..k {
                        let mut acc = 0;
                        for t in 0..k {
                            acc += grids[a][r * k + t] * grids[b][t * k + c];
                        }
                        prod[r * k + c] = acc % p;
                    }
                }
                mul[a * q + b] = encode(&prod);
            }
        }
        let mut ident = vec![0usize; k * k];
        for i in 0..k {
            ident[i * k + i] = 1;
        }
        let one = encode(&ident);
        let kind = DomainKind::Ring(spec);
        Domain(Arc::new(Self::finish(
            kind,
            q,
            p as u32,
            (k * k) as u32,
            one,
            add,
            mul,
        )))
    }

    fn finish(
        kind: DomainKind,
        q: usize,
        prime: u32,
        digits: u32,
        one: u16,
        add: Vec<u16>,
        mul: Vec<u16>,
    ) -> Tables {
        let mut neg = vec![0u16; q];
        for a in 0..q {
            neg[a] = (0..q)
                .find(|&b| add[a * q + b] == 0)
                .expect("additive inverse exists") as u16;
        }
        let mut inv = vec![NO_INVERSE; q];
        for a in 0..q {
            if let Some(b) = (0..q).find(|&b| mul[a * q + b] == one && mul[b * q + a] == one) {
                inv[a] = b as u16;
            }
        }
        Tables {
            kind,
            size: q,
            prime,
            digits,
            one,
            add,
            mul,
            neg,
            inv,
        }
    }

    pub fn kind(&self) -> &DomainKind {
        &self.0.kind
    }

    pub fn is_field(&self) -> bool {
        matches!(self.0.kind, DomainKind::Field(_))
    }

    pub fn field_spec(&self) -> Option<&FieldSpec> {
        match &self.0.kind {
            DomainKind::Field(f) => Some(f),
            DomainKind::Ring(_) => None,
        }
    }

    pub fn ring_spec(&self) -> Option<&RingSpec> {
        match &self.0.kind {
            DomainKind::Ring(r) => Some(r),
            DomainKind::Field(_) => None,
        }
    }

    /// Number of symbols.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// The prime p underlying the alphabet.
    pub fn characteristic(&self) -> u32 {
        self.0.prime
    }

    #[inline]
    pub fn zero(&self) -> u16 {
        0
    }

    #[inline]
    pub fn one(&self) -> u16 {
        self.0.one
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.0.add[a as usize * self.0.size + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.0.mul[a as usize * self.0.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.0.neg[a as usize]
    }

    /// Two-sided inverse, if `a` is a unit.
    #[inline]
    pub fn inv(&self, a: u16) -> Option<u16> {
        let v = self.0.inv[a as usize];
        (v != NO_INVERSE).then_some(v)
    }

    pub fn is_unit(&self, a: u16) -> bool {
        self.inv(a).is_some()
    }

    /// The image of the integer `c` (i.e. `c · 1`).
    pub fn from_int(&self, c: u64) -> u16 {
        let c = (c % self.0.prime as u64) as u16;
        let mut acc = 0u16;
        for _ in 0..c {
            acc = self.add(acc, self.one());
        }
        acc
    }

    /// Base-p digits of a symbol index (field coefficients or ring entries).
    pub fn digits(&self, v: u16) -> Vec<u32> {
        let p = self.0.prime;
        let mut rest = v as u32;
        (0..self.0.digits)
            .map(|_| {
                let d = rest % p;
                rest /= p;
                d
            })
            .collect()
    }

    /// Inverse of [`Domain::digits`].
    pub fn from_digits(&self, digits: &[u32]) -> Result<u16, AlgebraError> {
        if digits.len() != self.0.digits as usize {
            return Err(AlgebraError::Parse(format!(
                "expected {} digits for {self}, got {}",
                self.0.digits,
                digits.len()
            )));
        }
        let p = self.0.prime;
        if let Some(bad) = digits.iter().find(|&&d| d >= p) {
            return Err(AlgebraError::Parse(format!("digit {bad} not in [0,{p})")));
        }
        Ok(digits.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u16)
    }

    /// Whether `v` equals `c · 1` for some integer c; returns c.
    pub fn as_int(&self, v: u16) -> Option<u32> {
        (0..self.0.prime).find(|&c| self.from_int(c as u64) == v)
    }

    pub fn elements(&self) -> impl Iterator<Item = u16> {
        0..self.0.size as u16
    }

    /// JSON literal of a symbol as used inside matrix literals: integer
    /// constants print as numbers, other field elements as a coefficient
    /// list, other ring elements as a k×k grid.
    pub fn symbol_to_json(&self, v: u16) -> serde_json::Value {
        use serde_json::Value;
        if let Some(c) = self.as_int(v) {
            return Value::from(c);
        }
        let digits = self.digits(v);
        match &self.0.kind {
            DomainKind::Field(_) => Value::Array(digits.into_iter().map(Value::from).collect()),
            DomainKind::Ring(rs) => {
                let k = rs.side as usize;
                Value::Array(
                    digits
                        .chunks(k)
                        .map(|row| Value::Array(row.iter().map(|&d| Value::from(d)).collect()))
                        .collect(),
                )
            }
        }
    }

    /// Inverse of [`Domain::symbol_to_json`].
    pub fn symbol_from_json(&self, v: &serde_json::Value) -> Result<u16, AlgebraError> {
        use serde_json::Value;
        let bad = || AlgebraError::Parse(format!("`{v}` is not a symbol of {self}"));
        match v {
            Value::Number(n) => {
                let c = n.as_u64().ok_or_else(bad)?;
                if c >= self.0.prime as u64 {
                    return Err(bad());
                }
                Ok(self.from_int(c))
            }
            Value::Array(items) => match &self.0.kind {
                DomainKind::Field(_) => {
                    let digits = items
                        .iter()
                        .map(|x| x.as_u64().map(|d| d as u32).ok_or_else(bad))
                        .collect::<Result<Vec<_>, _>>()?;
                    self.from_digits(&digits)
                }
                DomainKind::Ring(rs) => {
                    let k = rs.side as usize;
                    if items.len() != k {
                        return Err(bad());
                    }
                    let mut digits = Vec::with_capacity(k * k);
                    for row in items {
                        let row = row.as_array().ok_or_else(bad)?;
                        if row.len() != k {
                            return Err(bad());
                        }
                        for x in row {
                            digits.push(x.as_u64().ok_or_else(bad)? as u32);
                        }
                    }
                    self.from_digits(&digits)
                }
            },
            _ => Err(bad()),
        }
    }

    pub fn check_same(&self, other: &Domain) -> Result<(), AlgebraError> {
        if self == other {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub fn require_field(&self) -> Result<(), AlgebraError> {
        if self.is_field() {
            Ok(())
        } else {
            Err(AlgebraError::UnsupportedDomain(self.to_string()))
        }
    }
}

/// A single symbol tied to its alphabet. Used at API boundaries; internal
/// code works on raw `u16` indices through [`Domain`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    domain: Domain,
    value: u16,
}

/// Elements of a field alphabet.
pub type FieldElement = Element;
/// Elements of a matrix-ring alphabet.
pub type RingElement = Element;

impl Element {
    pub fn new(domain: &Domain, value: u16) -> Result<Self, AlgebraError> {
        if value as usize >= domain.size() {
            return Err(AlgebraError::Parse(format!(
                "symbol index {value} out of range for {domain}"
            )));
        }
        Ok(Element {
            domain: domain.clone(),
            value,
        })
    }

    pub fn from_int(domain: &Domain, c: u64) -> Self {
        Element {
            domain: domain.clone(),
            value: domain.from_int(c),
        }
    }

    /// Field element from its coefficients (low-to-high) or ring element from
    /// its row-major entries.
    pub fn from_digits(domain: &Domain, digits: &[u32]) -> Result<Self, AlgebraError> {
        Ok(Element {
            domain: domain.clone(),
            value: domain.from_digits(digits)?,
        })
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn value(&self) -> u16 {
        self.value
    }

    pub fn digits(&self) -> Vec<u32> {
        self.domain.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.domain.check_same(&other.domain)?;
        Ok(self.with(self.domain.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.domain.check_same(&other.domain)?;
        Ok(self.with(self.domain.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.domain.check_same(&other.domain)?;
        Ok(self.with(self.domain.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Element {
        self.with(self.domain.neg(self.value))
    }

    pub fn inv(&self) -> Result<Element, AlgebraError> {
        self.domain
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(AlgebraError::DivisionByZero)
    }

    fn with(&self, value: u16) -> Element {
        Element {
            domain: self.domain.clone(),
            value,
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Element {
    /// `p^n:[c0,c1,...]` for field elements, `ring:p,k:[[..],..]` for ring
    /// elements.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.digits();
        match self.domain.kind() {
            DomainKind::Field(_) => {
                let body: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                write!(f, "{}:[{}]", self.domain, body.join(","))
            }
            DomainKind::Ring(rs) => {
                let k = rs.side() as usize;
                let rows: Vec<String> = digits
                    .chunks(k)
                    .map(|r| {
                        let cells: Vec<String> = r.iter().map(|d| d.to_string()).collect();
                        format!("[{}]", cells.join(","))
                    })
                    .collect();
                write!(f, "{}:[{}]", self.domain, rows.join(","))
            }
        }
    }
}

impl FromStr for Element {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let split = s
            .find(":[")
            .ok_or_else(|| AlgebraError::Parse(format!("bad element literal `{s}`")))?;
        let domain: Domain = s[..split].parse()?;
        let body: serde_json::Value = serde_json::from_str(&s[split + 1..])
            .map_err(|e| AlgebraError::Parse(format!("bad element literal `{s}`: {e}")))?;
        let value = match (domain.kind(), &body) {
            // A field element always carries its full coefficient list.
            (DomainKind::Field(_), serde_json::Value::Array(items)) => {
                let digits = items
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|d| d as u32)
                            .ok_or_else(|| AlgebraError::Parse(format!("bad coefficient in `{s}`")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                domain.from_digits(&digits)?
            }
            _ => domain.symbol_from_json(&body)?,
        };
        Ok(Element { domain, value })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(FieldSpec::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(FieldSpec::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FieldSpec::new(3, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            FieldSpec::new(4, 1).unwrap_err(),
            AlgebraError::CompositeCharacteristic(4)
        );
        assert_eq!(FieldSpec::new(1, 1).unwrap_err(), AlgebraError::CompositeCharacteristic(1));
        assert_eq!(FieldSpec::new(2, 0).unwrap_err(), AlgebraError::InvalidDegree(0));
        assert!(matches!(
            FieldSpec::new(2, 11),
            Err(AlgebraError::DomainTooLarge { .. })
        ));
        assert!(RingSpec::new(6, 2).is_err());
        assert!(FieldSpec::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(2, vec![1, 1, 1]).is_ok());
    }

    #[test]
    fn small_field_facts() {
        let gf2 = Domain::field(2, 1).unwrap();
        assert_eq!(gf2.add(1, 1), 0);
        let gf4 = Domain::field(2, 2).unwrap();
        // g = x has index p^1 = 2; g*g = g + 1 = index 3.
        assert_eq!(gf4.mul(2, 2), 3);
        let gf5 = Domain::field(5, 1).unwrap();
        assert_eq!(gf5.inv(2), Some(3));
        assert_eq!(gf5.inv(0), None);
    }

    #[test]
    fn element_api() {
        let gf5 = Domain::field(5, 1).unwrap();
        let two = Element::from_int(&gf5, 2);
        assert_eq!(two.inv().unwrap(), Element::from_int(&gf5, 3));
        assert_eq!(
            Element::from_int(&gf5, 0).inv().unwrap_err(),
            AlgebraError::DivisionByZero
        );
        let gf7 = Domain::field(7, 1).unwrap();
        assert!(matches!(
            two.add(&Element::from_int(&gf7, 1)),
            Err(AlgebraError::FieldMismatch { .. })
        ));
    }

    #[test]
    fn element_text_roundtrip() {
        let gf9 = Domain::field(3, 2).unwrap();
        for v in gf9.elements() {
            let e = Element::new(&gf9, v).unwrap();
            let back: Element = e.to_string().parse().unwrap();
            assert_eq!(back, e);
        }
        assert_eq!(Element::new(&gf9, 5).unwrap().to_string(), "3^2:[2,1]");
        let ring = Domain::ring(2, 2).unwrap();
        for v in ring.elements() {
            let e = Element::new(&ring, v).unwrap();
            let back: Element = e.to_string().parse().unwrap();
            assert_eq!(back, e);
        }
    }

    #[test]
    fn domain_strings() {
        assert_eq!("3".parse::<Domain>().unwrap(), Domain::field(3, 1).unwrap());
        assert_eq!("2^2".parse::<Domain>().unwrap().to_string(), "2^2");
        assert_eq!("ring:2,2".parse::<Domain>().unwrap().size(), 16);
        assert!("9".parse::<Domain>().is_err());
        assert!("ring:2".parse::<Domain>().is_err());
    }

    #[test]
    fn symbol_json_roundtrip() {
        for d in ["2", "3^2", "2^3", "ring:2,2"] {
            let dom: Domain = d.parse().unwrap();
            for v in dom.elements() {
                let j = dom.symbol_to_json(v);
                assert_eq!(dom.symbol_from_json(&j).unwrap(), v, "{d} {v}");
            }
        }
    }
}
