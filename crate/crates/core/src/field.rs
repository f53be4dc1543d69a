//! Finite fields GF(p^k) with an involutory Frobenius power σ.
//!
//! Elements are stored in the polynomial basis modulo a monic irreducible
//! polynomial of degree `k`, packed base `p` into a `u16` (coefficient of
//! `w^i` is digit `i`). All arithmetic goes through a shared [`Field`] handle
//! that owns the lookup tables; [`Felt`] values are plain `Copy` tokens.
//!
//! Element literals are written either as integers (reduced mod `p`) or as
//! polynomials in the generator `w`, e.g. `w+1`, `2w^2+w`, `-w`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Table-based arithmetic is used up to this order; beyond it log/exp tables
/// and digit-wise addition take over.
const TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NonPrime(u32),
    #[error("field order {0} exceeds the supported maximum 2^16")]
    TooLarge(u64),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {expected} (got {got} coefficients)")]
    BadModulus { expected: u32, got: usize },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("sigma exponent {exp} out of range 0..={k}")]
    SigmaOutOfRange { exp: u32, k: u32 },
    #[error("t -> t^(p^{0}) is not an involution")]
    NonInvolutorySigma(u32),
    #[error("epsilon does not satisfy eps^sigma * eps = 1")]
    BadEpsilon,
    #[error("cannot parse field spec `{0}`")]
    BadSpec(String),
    #[error("cannot parse field element `{0}`")]
    BadLiteral(String),
}

/// A field element: packed base-`p` coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Felt(pub(crate) u16);

impl Felt {
    pub const ZERO: Felt = Felt(0);
    pub const ONE: Felt = Felt(1);

    /// Raw packed value (`0..q`).
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Immutable field context. Shared via [`Field`].
pub struct FieldCtx {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    sigma_exp: u32,
    add_t: Vec<u16>,
    mul_t: Vec<u16>,
    neg_t: Vec<u16>,
    inv_t: Vec<u16>,
    sigma_t: Vec<u16>,
    exp_t: Vec<u16>,
    log_t: Vec<u32>,
}

/// Cheap-to-clone handle to a [`FieldCtx`].
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, sigma_exp={})", self.0.p, self.0.k, self.0.sigma_exp)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.k == other.0.k
                && self.0.modulus == other.0.modulus
                && self.0.sigma_exp == other.0.sigma_exp)
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Default moduli (low-to-high, monic) for the desk-scale extension fields.
fn default_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, k) {
        (_, 1) => return Some(vec![0, 1]),
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 0, 0, 0, 1],
        (3, 2) => &[1, 0, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[2, 1, 1],
        (7, 2) => &[1, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

// ---- dense polynomial helpers over GF(p), coefficients low-to-high ----

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] * lead_inv) % p;
        for (i, &mi) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (c * mi) % p) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    if k <= 1 {
        return true;
    }
    // trial division by every monic polynomial of degree 1..=k/2
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = code;
            for _ in 0..d {
                div.push((c % p as u64) as u32);
                c /= p as u64;
            }
            div.push(1);
            if poly_rem(m, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn find_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            m.push((c % p as u64) as u32);
            c /= p as u64;
        }
        m.push(1);
        if m[0] != 0 && is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

struct Digits {
    p: u32,
    k: u32,
}

impl Digits {
    fn unpack(&self, mut v: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.unpack(a).into_iter().map(|c| (self.p - c) % self.p).collect();
        self.pack(&d)
    }

    fn mul(&self, a: u32, b: u32, m: &[u32]) -> u32 {
        let da = self.unpack(a);
        let db = self.unpack(b);
        let mut prod = vec![0u32; da.len() + db.len()];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut r = poly_rem(&prod, m, self.p);
        r.resize(self.k as usize, 0);
        self.pack(&r)
    }
}

fn factor_distinct(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldCtx {
    fn build(p: u32, k: u32, modulus: Vec<u32>, sigma_exp: u32) -> Result<FieldCtx, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q64 > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q64));
        }
        let q = q64 as u32;
        let modulus = if k == 1 { vec![0, 1] } else { modulus };
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::BadModulus { expected: k, got: modulus.len() });
        }
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::ReducibleModulus(p));
        }
        if sigma_exp > k {
            return Err(FieldError::SigmaOutOfRange { exp: sigma_exp, k });
        }
        let dg = Digits { p, k };

        // exp/log tables from a primitive element
        let order = q - 1;
        let primes = factor_distinct(order.max(1));
        let mut exp_t = vec![0u16; order as usize];
        let mut log_t = vec![0u32; q as usize];
        if q == 2 {
            exp_t[0] = 1;
        } else {
            let pow_elem = |g: u32, mut e: u32| -> u32 {
                let mut acc = 1u32;
                let mut base = g;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = dg.mul(acc, base, &modulus);
                    }
                    base = dg.mul(base, base, &modulus);
                    e >>= 1;
                }
                acc
            };
            let g = (2..q)
                .find(|&g| primes.iter().all(|&r| pow_elem(g, order / r) != 1))
                .expect("multiplicative group of a finite field is cyclic");
            let mut cur = 1u32;
            for i in 0..order {
                exp_t[i as usize] = cur as u16;
                log_t[cur as usize] = i;
                cur = dg.mul(cur, g, &modulus);
            }
        }

        let mul_via_log = |a: u32, b: u32| -> u32 {
            if a == 0 || b == 0 {
                0
            } else {
                exp_t[((log_t[a as usize] + log_t[b as usize]) % order) as usize] as u32
            }
        };

        let (add_t, mul_t) = if q <= TABLE_LIMIT {
            let mut add_t = vec![0u16; (q * q) as usize];
            let mut mul_t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add_t[(a * q + b) as usize] = dg.add(a, b) as u16;
                    mul_t[(a * q + b) as usize] = mul_via_log(a, b) as u16;
                }
            }
            (add_t, mul_t)
        } else {
            (Vec::new(), Vec::new())
        };
        let neg_t: Vec<u16> = (0..q).map(|a| dg.neg(a) as u16).collect();
        let inv_t: Vec<u16> = (0..q)
            .map(|a| if a == 0 { 0 } else { exp_t[((order - log_t[a as usize]) % order) as usize] })
            .collect();
        let frob_power = (p as u64).pow(sigma_exp) as u32;
        let sigma_t: Vec<u16> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    exp_t[((log_t[a as usize] as u64 * frob_power as u64) % order as u64) as usize]
                }
            })
            .collect();
        // exhaustive involution check
        if (0..q as usize).any(|a| sigma_t[sigma_t[a] as usize] as usize != a) {
            return Err(FieldError::NonInvolutorySigma(sigma_exp));
        }
        Ok(FieldCtx { p, k, q, modulus, sigma_exp, add_t, mul_t, neg_t, inv_t, sigma_t, exp_t, log_t })
    }
}

impl Field {
    /// Builds GF(p^k) from an explicit modulus (low-to-high, monic leading
    /// coefficient included; ignored when `k == 1`) with σ(t) = t^(p^sigma_exp).
    pub fn new(p: u32, k: u32, modulus: &[u32], sigma_exp: u32) -> Result<Field, FieldError> {
        Ok(Field(Arc::new(FieldCtx::build(p, k, modulus.to_vec(), sigma_exp)?)))
    }

    /// GF(q) with a default modulus and σ = id.
    pub fn gf(q: u32) -> Result<Field, FieldError> {
        Self::gf_with_sigma(q, 0)
    }

    /// GF(q²) with σ(t) = t^q, the hermitian setting.
    pub fn gf_hermitian(q2: u32) -> Result<Field, FieldError> {
        let (_, k) = prime_power(q2).ok_or(FieldError::NonPrime(q2))?;
        Self::gf_with_sigma(q2, k / 2).and_then(|f| {
            if k % 2 == 1 {
                Err(FieldError::NonInvolutorySigma(k / 2))
            } else {
                Ok(f)
            }
        })
    }

    pub fn gf_with_sigma(q: u32, sigma_exp: u32) -> Result<Field, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NonPrime(q))?;
        let modulus = default_modulus(p, k).unwrap_or_else(|| find_irreducible(p, k));
        Field::new(p, k, &modulus, sigma_exp)
    }

    /// Same field, different σ exponent.
    pub fn with_sigma(&self, sigma_exp: u32) -> Result<Field, FieldError> {
        if sigma_exp == self.0.sigma_exp {
            return Ok(self.clone());
        }
        Field::new(self.0.p, self.0.k, &self.0.modulus, sigma_exp)
    }

    /// Parses `p^k/c0,c1,...,ck/sigma_exp`. The modulus part may be empty
    /// (default modulus) and the trailing parts may be omitted; a bare
    /// integer `q` is also accepted.
    pub fn parse_spec(spec: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadSpec(spec.to_string());
        let mut parts = spec.trim().split('/');
        let head = parts.next().ok_or_else(bad)?.trim();
        let (p, k) = if let Some((p, k)) = head.split_once('^') {
            (p.trim().parse::<u32>().map_err(|_| bad())?, k.trim().parse::<u32>().map_err(|_| bad())?)
        } else {
            let q: u32 = head.parse().map_err(|_| bad())?;
            prime_power(q).ok_or_else(bad)?
        };
        let modulus_part = parts.next().map(str::trim).unwrap_or("");
        let sigma_part = parts.next().map(str::trim).unwrap_or("");
        if parts.next().is_some() {
            return Err(bad());
        }
        let sigma_exp = if sigma_part.is_empty() { 0 } else { sigma_part.parse().map_err(|_| bad())? };
        let modulus = if modulus_part.is_empty() || modulus_part == "-" {
            if !is_prime(p) {
                return Err(FieldError::NonPrime(p));
            }
            default_modulus(p, k).unwrap_or_else(|| find_irreducible(p, k))
        } else {
            modulus_part
                .split(',')
                .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?
        };
        Field::new(p, k, &modulus, sigma_exp)
    }

    /// Canonical textual spec, inverse of [`Field::parse_spec`].
    pub fn spec(&self) -> String {
        let m: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        if self.0.k == 1 {
            format!("{}^1//{}", self.0.p, self.0.sigma_exp)
        } else {
            format!("{}^{}/{}/{}", self.0.p, self.0.k, m.join(","), self.0.sigma_exp)
        }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }
    pub fn sigma_exp(&self) -> u32 {
        self.0.sigma_exp
    }

    /// True when σ acts as the identity (e = 0, or e = k).
    pub fn sigma_is_identity(&self) -> bool {
        self.0.sigma_exp % self.0.k == 0
    }

    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }
    pub fn one(&self) -> Felt {
        Felt::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Felt {
        Felt(n.rem_euclid(self.0.p as i64) as u16)
    }

    /// Element from its coefficient vector in the polynomial basis.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Felt {
        let mut v = 0u32;
        for &c in coeffs.iter().take(self.0.k as usize).rev() {
            v = v * self.0.p + c % self.0.p;
        }
        Felt(v as u16)
    }

    /// Coefficients of `x` in the basis 1, w, ..., w^(k-1).
    pub fn coeffs(&self, x: Felt) -> Vec<u32> {
        Digits { p: self.0.p, k: self.0.k }.unpack(x.0 as u32)
    }

    /// The class of the indeterminate `w`. For prime fields, where `w` has no
    /// meaning, a primitive element is returned.
    pub fn generator(&self) -> Felt {
        if self.0.k == 1 {
            self.primitive()
        } else {
            Felt(self.0.p as u16)
        }
    }

    /// A primitive element of the multiplicative group.
    pub fn primitive(&self) -> Felt {
        Felt(self.0.exp_t.get(1).copied().unwrap_or(1))
    }

    pub fn elements(&self) -> impl Iterator<Item = Felt> + Clone {
        (0..self.0.q).map(|v| Felt(v as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Felt> + Clone {
        (1..self.0.q).map(|v| Felt(v as u16))
    }

    #[inline]
    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        let c = &self.0;
        if c.q <= TABLE_LIMIT {
            Felt(c.add_t[a.0 as usize * c.q as usize + b.0 as usize])
        } else {
            Felt(Digits { p: c.p, k: c.k }.add(a.0 as u32, b.0 as u32) as u16)
        }
    }

    #[inline]
    pub fn neg(&self, a: Felt) -> Felt {
        Felt(self.0.neg_t[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        let c = &self.0;
        if c.q <= TABLE_LIMIT {
            Felt(c.mul_t[a.0 as usize * c.q as usize + b.0 as usize])
        } else if a.0 == 0 || b.0 == 0 {
            Felt::ZERO
        } else {
            let order = c.q - 1;
            Felt(c.exp_t[((c.log_t[a.0 as usize] + c.log_t[b.0 as usize]) % order) as usize])
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Felt) -> Option<Felt> {
        if a.is_zero() {
            None
        } else {
            Some(Felt(self.0.inv_t[a.0 as usize]))
        }
    }

    /// `a / b`; panics on division by zero.
    pub fn div(&self, a: Felt, b: Felt) -> Felt {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: Felt, e: u64) -> Felt {
        if e == 0 {
            return Felt::ONE;
        }
        if a.is_zero() {
            return Felt::ZERO;
        }
        let order = (self.0.q - 1) as u64;
        let l = self.0.log_t[a.0 as usize] as u64;
        Felt(self.0.exp_t[((l * (e % order)) % order) as usize])
    }

    /// σ(x) = x^(p^sigma_exp).
    #[inline]
    pub fn frobenius(&self, x: Felt) -> Felt {
        Felt(self.0.sigma_t[x.0 as usize])
    }

    /// Elements fixed by σ.
    pub fn fixed_field(&self) -> Vec<Felt> {
        self.elements().filter(|&x| self.frobenius(x) == x).collect()
    }

    /// Whether `x` is a square in the field.
    pub fn is_square(&self, x: Felt) -> bool {
        x.is_zero() || self.elements().any(|t| self.mul(t, t) == x)
    }

    /// `{ t + eps * t^σ : t ∈ GF(q) }`.
    pub fn trace_value_set(&self, eps: Felt) -> Result<BTreeSet<Felt>, FieldError> {
        if self.mul(self.frobenius(eps), eps) != Felt::ONE {
            return Err(FieldError::BadEpsilon);
        }
        Ok(self.elements().map(|t| self.add(t, self.mul(eps, self.frobenius(t)))).collect())
    }

    /// Formats an element as an integer (prime fields) or a polynomial in `w`.
    pub fn fmt_elem(&self, x: Felt) -> String {
        if self.0.k == 1 {
            return x.0.to_string();
        }
        let coeffs = self.coeffs(x);
        let mut terms = Vec::new();
        for (i, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            terms.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mono,
                _ => format!("{c}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Parses an element literal (see module docs).
    pub fn parse_elem(&self, s: &str) -> Result<Felt, FieldError> {
        let bad = || FieldError::BadLiteral(s.to_string());
        let mut t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        while t.starts_with('(') && t.ends_with(')') {
            t = t[1..t.len() - 1].to_string();
        }
        if t.is_empty() {
            return Err(bad());
        }
        let mut acc = Felt::ZERO;
        let mut rest = t.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let mut negative = false;
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
            } else if let Some(r) = rest.strip_prefix('-') {
                rest = r;
                negative = true;
            } else if !first {
                return Err(bad());
            }
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            let (coef_str, mono) = match term.find('w') {
                Some(pos) => (&term[..pos], Some(&term[pos + 1..])),
                None => (term, None),
            };
            let coef_str = coef_str.trim_end_matches('*');
            let coef = if coef_str.is_empty() {
                if mono.is_none() {
                    return Err(bad());
                }
                1i64
            } else {
                coef_str.parse::<i64>().map_err(|_| bad())?
            };
            let mut val = self.from_int(coef);
            if let Some(m) = mono {
                let e: u64 = if m.is_empty() {
                    1
                } else {
                    m.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                if self.0.k == 1 {
                    return Err(bad());
                }
                val = self.mul(val, self.pow(self.generator(), e));
            }
            if negative {
                val = self.neg(val);
            }
            acc = self.add(acc, val);
        }
        Ok(acc)
    }

    /// `dst += a * src`, entrywise. The hot loop of every elimination.
    pub fn axpy(&self, dst: &mut [Felt], a: Felt, src: &[Felt]) {
        if a.is_zero() {
            return;
        }
        let c = &self.0;
        if c.q <= TABLE_LIMIT {
            let q = c.q as usize;
            let row = &c.mul_t[a.0 as usize * q..(a.0 as usize + 1) * q];
            for (d, s) in dst.iter_mut().zip(src) {
                if s.0 != 0 {
                    d.0 = c.add_t[d.0 as usize * q + row[s.0 as usize] as usize];
                }
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                if !s.is_zero() {
                    *d = self.add(*d, self.mul(a, s));
                }
            }
        }
    }

    /// `v *= a`, entrywise.
    pub fn scale_in_place(&self, v: &mut [Felt], a: Felt) {
        for x in v.iter_mut() {
            *x = self.mul(*x, a);
        }
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Felt>>(&self, it: I) -> Felt {
        it.into_iter().fold(Felt::ZERO, |a, b| self.add(a, b))
    }

    /// Dot product of two equal-length slices.
    pub fn dot(&self, a: &[Felt], b: &[Felt]) -> Felt {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = Felt::ZERO;
        for (&x, &y) in a.iter().zip(b) {
            if !x.is_zero() && !y.is_zero() {
                acc = self.add(acc, self.mul(x, y));
            }
        }
        acc
    }
}

/// Splits `q` as `p^k`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_identity_sigma() {
        let f = Field::new(2, 1, &[], 0).unwrap();
        assert_eq!(f.q(), 2);
        assert!(f.sigma_is_identity());
        assert_eq!(f.frobenius(Felt::ONE), Felt::ONE);
    }

    #[test]
    fn gf4_frobenius_swaps_omega() {
        let f = Field::new(2, 2, &[1, 1, 1], 1).unwrap();
        let w = f.generator();
        let w2 = f.mul(w, w);
        // w^2 = w + 1 under x^2 + x + 1
        assert_eq!(w2, f.add(w, Felt::ONE));
        assert_eq!(f.frobenius(w), w2);
        assert_eq!(f.frobenius(f.frobenius(w)), w);
        assert_eq!(f.frobenius(Felt::ZERO), Felt::ZERO);
    }

    #[test]
    fn gf9_sigma_is_cube() {
        let f = Field::new(3, 2, &[1, 0, 1], 1).unwrap();
        for x in f.elements() {
            // oracle: repeated multiplication
            let cube = f.mul(f.mul(x, x), x);
            assert_eq!(f.frobenius(x), cube);
            assert_eq!(f.frobenius(f.frobenius(x)), x);
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1, &[], 0).unwrap_err(), FieldError::NonPrime(4));
        assert_eq!(Field::new(2, 2, &[1, 0, 1], 0).unwrap_err(), FieldError::ReducibleModulus(2));
        assert_eq!(Field::new(3, 2, &[2, 0, 1], 0).unwrap_err(), FieldError::ReducibleModulus(3));
        // t -> t^2 on GF(8) has order 3
        assert_eq!(Field::new(2, 3, &[1, 1, 0, 1], 1).unwrap_err(), FieldError::NonInvolutorySigma(1));
        assert!(matches!(Field::new(2, 2, &[1, 1], 0), Err(FieldError::BadModulus { .. })));
    }

    #[test]
    fn trace_values() {
        let f2 = Field::gf(2).unwrap();
        assert_eq!(f2.trace_value_set(Felt::ONE).unwrap(), [Felt::ZERO].into_iter().collect());
        let f3 = Field::gf(3).unwrap();
        assert_eq!(f3.trace_value_set(Felt::ONE).unwrap().len(), 3);
        let f4 = Field::gf_hermitian(4).unwrap();
        let expect: BTreeSet<Felt> = f4.elements().map(|t| f4.add(t, f4.mul(t, t))).collect();
        assert_eq!(f4.trace_value_set(Felt::ONE).unwrap(), expect);
        assert_eq!(expect, [Felt::ZERO, Felt::ONE].into_iter().collect());
        // every nonzero element of GF(4) has norm 1 over GF(2)
        assert_eq!(f4.trace_value_set(f4.generator()).unwrap().len(), 2);
        assert_eq!(f4.trace_value_set(Felt::ZERO), Err(FieldError::BadEpsilon));
        let f9 = Field::gf_hermitian(9).unwrap();
        assert_eq!(f9.trace_value_set(f9.from_int(2)).unwrap().len(), 3);
        assert_eq!(f9.trace_value_set(f9.from_coeffs(&[1, 1])).map(|s| s.len()), Err(FieldError::BadEpsilon));
    }

    #[test]
    fn spec_round_trip_and_literals() {
        let f = Field::parse_spec("2^2/1,1,1/1").unwrap();
        assert_eq!(f.q(), 4);
        assert_eq!(f.sigma_exp(), 1);
        assert_eq!(Field::parse_spec(&f.spec()).unwrap(), f);
        let g = Field::parse_spec("25").unwrap();
        assert_eq!((g.p(), g.k()), (5, 2));
        for x in g.elements() {
            assert_eq!(g.parse_elem(&g.fmt_elem(x)).unwrap(), x);
        }
        assert_eq!(g.parse_elem("-1").unwrap(), g.from_int(4));
        assert_eq!(g.parse_elem("(2*w + 3)").unwrap(), g.from_coeffs(&[3, 2]));
        assert!(Field::gf(3).unwrap().parse_elem("w").is_err());
    }

    #[test]
    fn large_field_uses_log_tables() {
        let f = Field::gf(1024).unwrap();
        let a = f.from_coeffs(&[1, 0, 1, 1]);
        let b = f.from_coeffs(&[0, 1, 1, 0, 0, 0, 0, 0, 0, 1]);
        let ab = f.mul(a, b);
        assert_eq!(f.mul(ab, f.inv(b).unwrap()), a);
        assert_eq!(f.add(a, a), Felt::ZERO);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (q, s) in [(2, 0), (3, 0), (4, 1), (5, 0), (7, 0), (8, 0), (9, 1), (16, 2)] {
            let f = Field::gf_with_sigma(q, s).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Felt::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Felt::ONE);
                }
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
                    assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }
}
