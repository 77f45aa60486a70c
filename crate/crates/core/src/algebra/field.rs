//! Finite fields `F_{p^k}` and their extensions, realized with log/exp tables.
//!
//! Every element is stored as an index whose base-`p` digits are its
//! coordinates over the prime field. For a quotient `B[s]/(m)` over a base
//! field `B` of order `Q`, the index of `c_0 + c_1 s + ...` is
//! `c_0 + c_1 Q + ...`, so base elements keep their index when embedded.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

const MAX_ORDER: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 64;

/// Description of `F_{p^k}`: the prime, the degree and a monic irreducible
/// modulus over `F_p` (coefficients low to high, length `k + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }

    /// Validates a user supplied modulus over `F_p`.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<FieldSpec> {
        if !is_prime(p as u64) {
            return Err(Error::CompositeP(p as u64));
        }
        let k = modulus.len().saturating_sub(1) as u32;
        let text = format!("{modulus:?}");
        if k == 0 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::ReducibleModulus(text));
        }
        if !prime_poly_irreducible(p, &modulus) {
            return Err(Error::ReducibleModulus(text));
        }
        Ok(FieldSpec { p, k, modulus })
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^k`, returning `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

/// The field `F_{p^k}` whose modulus is the lexicographically smallest monic
/// irreducible of degree `k` (coefficients compared from the constant term up).
pub fn make_field(p: u32, k: u32) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::CompositeP(p as u64));
    }
    if k == 0 {
        return Err(Error::ZeroExtensionDegree);
    }
    if (p as u64).checked_pow(k).is_none_or(|q| q > MAX_ORDER) {
        return Err(Error::FieldTooLarge((p as u64).saturating_pow(k)));
    }
    let k_us = k as usize;
    let mut tail = vec![0u32; k_us];
    loop {
        let mut modulus = tail.clone();
        modulus.push(1);
        if prime_poly_irreducible(p, &modulus) {
            return Ok(FieldSpec { p, k, modulus });
        }
        // Odometer with the constant term as the most significant digit.
        let mut i = k_us;
        loop {
            if i == 0 {
                unreachable!("an irreducible polynomial of every degree exists");
            }
            i -= 1;
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
        }
    }
}

/// Irreducibility over `F_p` by trial division with every monic polynomial of
/// degree at most half. Only used on field moduli, which are tiny.
fn prime_poly_irreducible(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    for deg in 1..=n / 2 {
        let mut tail = vec![0u32; deg];
        loop {
            let mut g = tail.clone();
            g.push(1);
            if prime_poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == deg {
                    break;
                }
                tail[i] += 1;
                if tail[i] < p {
                    break;
                }
                tail[i] = 0;
                i += 1;
            }
            if i == deg {
                break;
            }
        }
    }
    true
}

fn prime_poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for i in (dg..r.len()).rev() {
        let c = r[i];
        if c == 0 {
            continue;
        }
        for j in 0..=dg {
            r[i - dg + j] = (r[i - dg + j] + p - (c * g[j]) % p) % p;
        }
    }
    r.truncate(dg);
    r
}

/// An element of some finite field, identified by its index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug, PartialEq, Eq, Hash)]
enum Repr {
    Prime,
    Quotient {
        base: Field,
        modulus: Vec<u32>,
        symbol: char,
    },
}

struct FieldInner {
    p: u32,
    order: u32,
    repr: Repr,
    // exp has length 2 * (order - 1) so that log sums never need reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Vec<u32>,
    spec: Option<FieldSpec>,
}

/// A finite field with table-driven arithmetic. Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.order == other.0.order && self.0.repr == other.0.repr)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.order.hash(state);
        self.0.repr.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.repr {
            Repr::Prime => write!(f, "F_{}", self.0.p),
            Repr::Quotient { base, modulus, symbol } => {
                write!(f, "{:?}[{}]/({:?})", base, symbol, modulus)
            }
        }
    }
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::CompositeP(p as u64));
        }
        if p as u64 > MAX_ORDER {
            return Err(Error::FieldTooLarge(p as u64));
        }
        let mul = move |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;
        Ok(Field::build(p, p, Repr::Prime, None, mul))
    }

    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        let prime = Field::prime(spec.p)?;
        if spec.k == 1 {
            let mut field = prime;
            Arc::get_mut(&mut field.0).expect("fresh field").spec = Some(spec.clone());
            return Ok(field);
        }
        Field::quotient(&prime, &spec.modulus, 'g', Some(spec.clone()))
    }

    /// Convenience: the canonical `F_q`.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::from_spec(&make_field(p, k)?)
    }

    /// `base[s]/(modulus)`; the caller guarantees the modulus is monic irreducible.
    pub(crate) fn quotient(
        base: &Field,
        modulus: &[u32],
        symbol: char,
        spec: Option<FieldSpec>,
    ) -> Result<Field> {
        let e = modulus.len() as u32 - 1;
        let q = base.order() as u64;
        let order = q
            .checked_pow(e)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge(q.saturating_pow(e)))? as u32;
        let b = base.clone();
        let m = modulus.to_vec();
        let mul = move |x: u32, y: u32| quotient_mul(&b, &m, x, y);
        let repr = Repr::Quotient {
            base: base.clone(),
            modulus: modulus.to_vec(),
            symbol,
        };
        Ok(Field::build(base.characteristic(), order, repr, spec, mul))
    }

    fn build(
        p: u32,
        order: u32,
        repr: Repr,
        spec: Option<FieldSpec>,
        mul: impl Fn(u32, u32) -> u32,
    ) -> Field {
        let n = order - 1;
        let mut exp = vec![0u32; 2 * n.max(1) as usize];
        let mut log = vec![0u32; order as usize];
        let generator = if order == 2 {
            1
        } else {
            (2..order)
                .find(|&g| {
                    let mut x = g;
                    let mut k = 1;
                    while x != 1 {
                        x = mul(x, g);
                        k += 1;
                    }
                    k == n
                })
                .expect("multiplicative group of a finite field is cyclic")
        };
        let mut x = 1;
        for i in 0..n {
            exp[i as usize] = x;
            exp[(i + n) as usize] = x;
            log[x as usize] = i;
            x = mul(x, generator);
        }
        let neg = (0..order).map(|a| digit_neg(p, a)).collect();
        let add = if p != 2 && order <= ADD_TABLE_LIMIT {
            (0..order * order)
                .map(|ab| digit_add(p, ab / order, ab % order))
                .collect()
        } else {
            Vec::new()
        };
        Field(Arc::new(FieldInner {
            p,
            order,
            repr,
            exp,
            log,
            neg,
            add,
            spec,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// The field description, present for fields built from a [`FieldSpec`].
    pub fn spec(&self) -> Option<&FieldSpec> {
        self.0.spec.as_ref()
    }

    /// The base field when this field is a quotient of a polynomial ring.
    pub fn base(&self) -> Option<&Field> {
        match &self.0.repr {
            Repr::Prime => None,
            Repr::Quotient { base, .. } => Some(base),
        }
    }

    /// Degree over the base field (1 for a prime field).
    pub fn relative_degree(&self) -> u32 {
        match &self.0.repr {
            Repr::Prime => 1,
            Repr::Quotient { modulus, .. } => modulus.len() as u32 - 1,
        }
    }

    /// Whether `self` is obtained from `other` by a chain of quotients, so
    /// that indices of `other` embed unchanged.
    pub fn contains(&self, other: &Field) -> bool {
        let mut cur = Some(self);
        while let Some(f) = cur {
            if f == other {
                return true;
            }
            cur = f.base();
        }
        false
    }

    pub fn elem(&self, index: u32) -> FqElem {
        debug_assert!(index < self.order());
        FqElem(index)
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.order()).map(FqElem)
    }

    /// Coordinates over the base field (or the integer value for a prime field).
    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        match &self.0.repr {
            Repr::Prime => vec![a.0],
            Repr::Quotient { base, modulus, .. } => {
                let q = base.order();
                let mut x = a.0;
                (0..modulus.len() - 1)
                    .map(|_| {
                        let c = x % q;
                        x /= q;
                        c
                    })
                    .collect()
            }
        }
    }

    /// Inverse of [`Field::coeffs`]; missing high coordinates are zero.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> FqElem {
        let q = self.base().map_or(self.order(), Field::order);
        let mut idx = 0u32;
        for &c in coeffs.iter().rev() {
            idx = idx * q + c;
        }
        FqElem(idx)
    }

    #[inline]
    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let inner = &*self.0;
        if inner.p == 2 {
            FqElem(a.0 ^ b.0)
        } else if !inner.add.is_empty() {
            FqElem(inner.add[(a.0 * inner.order + b.0) as usize])
        } else {
            FqElem(digit_add(inner.p, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let inner = &*self.0;
        FqElem(inner.exp[(inner.log[a.0 as usize] + inner.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        let inner = &*self.0;
        let n = inner.order - 1;
        Ok(FqElem(inner.exp[((n - inner.log[a.0 as usize]) % n) as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.0 == 0 {
            return FqElem::ZERO;
        }
        let inner = &*self.0;
        let n = (inner.order - 1) as u64;
        let l = (inner.log[a.0 as usize] as u64 * (e % n)) % n;
        FqElem(inner.exp[l as usize])
    }

    /// The unique `p`-th root (Frobenius is bijective on a finite field).
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        self.pow(a, self.order() as u64 / self.0.p as u64)
    }

    /// Discrete logarithm with respect to the table generator.
    pub fn log(&self, a: FqElem) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(self.0.log[a.0 as usize])
    }

    pub fn format(&self, a: FqElem) -> String {
        match &self.0.repr {
            Repr::Prime => a.0.to_string(),
            Repr::Quotient { base, symbol, .. } => {
                let coeffs = self.coeffs(a);
                format_poly(base, &coeffs, &symbol.to_string())
            }
        }
    }

    /// The symbol used when printing elements (`None` for prime fields).
    pub fn symbol(&self) -> Option<char> {
        match &self.0.repr {
            Repr::Prime => None,
            Repr::Quotient { symbol, .. } => Some(*symbol),
        }
    }
}

/// Formats `sum coeffs[i] * var^i` with coefficients in `field`, highest term first.
pub(crate) fn format_poly(field: &Field, coeffs: &[u32], var: &str) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let cs = field.format(FqElem(c));
        let coef = if cs.contains('+') || cs.contains('*') {
            format!("({cs})")
        } else {
            cs.clone()
        };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (i, c) {
            (0, _) => cs,
            (_, 1) => mono,
            _ => format!("{coef}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

fn digit_add(p: u32, mut a: u32, mut b: u32) -> u32 {
    let (mut r, mut place) = (0, 1);
    while a > 0 || b > 0 {
        r += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    r
}

fn digit_neg(p: u32, mut a: u32) -> u32 {
    let (mut r, mut place) = (0, 1);
    while a > 0 {
        r += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    r
}

fn quotient_mul(base: &Field, modulus: &[u32], x: u32, y: u32) -> u32 {
    let e = modulus.len() - 1;
    let q = base.order();
    let digits = |mut v: u32| {
        (0..e)
            .map(|_| {
                let c = v % q;
                v /= q;
                FqElem(c)
            })
            .collect::<Vec<_>>()
    };
    let (a, b) = (digits(x), digits(y));
    let mut prod = vec![FqElem::ZERO; 2 * e - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = base.add(prod[i + j], base.mul(ai, bj));
        }
    }
    for i in (e..prod.len()).rev() {
        let c = prod[i];
        if c.is_zero() {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate().take(e) {
            prod[i - e + j] = base.sub(prod[i - e + j], base.mul(c, FqElem(m)));
        }
    }
    let mut idx = 0;
    for c in prod[..e].iter().rev() {
        idx = idx * q + c.0;
    }
    idx
}

/// Least `n >= 1` with `a^n = 1`.
pub fn mul_order(field: &Field, a: FqElem) -> Result<u64> {
    let l = field.log(a)? as u64;
    let n = field.order() as u64 - 1;
    Ok(n / gcd_u64(l, n))
}

/// All nonzero elements in index order.
pub fn enumerate_units(field: &Field) -> Vec<FqElem> {
    (1..field.order()).map(FqElem).collect()
}

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_quadratics_irreducible_oracle(p: u32) -> Vec<Vec<u32>> {
        // A monic quadratic is irreducible iff it has no root in F_p.
        let mut out = Vec::new();
        for c0 in 0..p {
            for c1 in 0..p {
                if (0..p).all(|x| (c0 + c1 * x + x * x) % p != 0) {
                    out.push(vec![c0, c1, 1]);
                }
            }
        }
        out
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(make_field(2, 1).unwrap().modulus, vec![0, 1]);
        assert_eq!(make_field(3, 1).unwrap().modulus, vec![0, 1]);
        let irr = all_quadratics_irreducible_oracle(2);
        assert_eq!(irr, vec![vec![1, 1, 1]]);
        assert_eq!(make_field(2, 2).unwrap().modulus, irr[0]);
        // Over F_3 the first irreducible quadratic in constant-term-major order.
        assert_eq!(make_field(3, 2).unwrap().modulus, all_quadratics_irreducible_oracle(3)[0]);
        assert_eq!(make_field(4, 1), Err(Error::CompositeP(4)));
        assert_eq!(make_field(2, 3).unwrap(), make_field(2, 3).unwrap());
    }

    #[test]
    fn mul_order_examples() {
        let f5 = Field::of_order(5).unwrap();
        assert_eq!(mul_order(&f5, FqElem::ONE).unwrap(), 1);
        assert_eq!(mul_order(&f5, f5.from_int(2)).unwrap(), 4);
        let f3 = Field::of_order(3).unwrap();
        assert_eq!(mul_order(&f3, f3.from_int(2)).unwrap(), 2);
        assert_eq!(mul_order(&f3, FqElem::ZERO), Err(Error::ZeroElement));
    }

    #[test]
    fn units_of_small_fields() {
        let f2 = Field::of_order(2).unwrap();
        assert_eq!(enumerate_units(&f2), vec![FqElem::ONE]);
        let f3 = Field::of_order(3).unwrap();
        assert_eq!(enumerate_units(&f3), vec![FqElem(1), FqElem(2)]);
        let f4 = Field::of_order(4).unwrap();
        let units = enumerate_units(&f4);
        assert_eq!(units.len(), 3);
        // g * g = g + 1 and g * (g + 1) = 1 from the modulus x^2 + x + 1.
        let g = f4.from_coeffs(&[0, 1]);
        let g1 = f4.from_coeffs(&[1, 1]);
        assert_eq!(f4.mul(g, g), g1);
        assert_eq!(f4.mul(g, g1), FqElem::ONE);
        for &a in &units {
            for &b in &units {
                assert!(units.contains(&f4.mul(a, b)));
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Field::of_order(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), FqElem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FqElem::ONE);
                }
                assert_eq!(f.pow(f.pth_root(a), f.characteristic() as u64), a);
                for b in f.elements().step_by(3) {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().step_by(5) {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs, "distributivity in F_{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn format_generator_field() {
        let f4 = Field::of_order(4).unwrap();
        assert_eq!(f4.format(f4.from_coeffs(&[1, 1])), "g+1");
        assert_eq!(f4.format(f4.from_coeffs(&[0, 1])), "g");
        let f9 = Field::of_order(9).unwrap();
        assert_eq!(f9.format(f9.from_coeffs(&[2, 2])), "2*g+2");
    }

    #[test]
    fn modulus_override_validation() {
        assert!(FieldSpec::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(2, vec![1, 1, 0, 1]).is_ok());
        assert!(FieldSpec::with_modulus(2, vec![1, 1]).is_ok());
    }
}
