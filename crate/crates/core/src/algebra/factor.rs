//! Factorization over finite fields: squarefree split, distinct-degree
//! split and Cantor-Zassenhaus equal-degree splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, FqElem};
use super::poly::{poly_gcd, FqPoly};
use crate::error::{Error, Result};

/// `f = unit * prod(factor^multiplicity)` with monic irreducible factors in
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> FqPoly {
        self.factors
            .iter()
            .fold(FqPoly::constant(field, self.unit), |acc, (g, m)| {
                &acc * &g.pow(*m as u64)
            })
    }
}

pub fn factorize(f: &FqPoly) -> Result<Factorization> {
    factorize_seeded(f, 0)
}

/// Full factorization; `seed` fixes the random choices of the equal-degree
/// splitting (the result does not depend on it).
pub fn factorize_seeded(f: &FqPoly, seed: u64) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (part, mult) in squarefree(&f.monic())? {
        for (block, d) in distinct_degree(&part)? {
            for g in equal_degree(&block, d, &mut rng)? {
                factors.push((g, mult));
            }
        }
    }
    factors.sort();
    Ok(Factorization {
        unit: f.leading(),
        factors,
    })
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with `g`
/// squarefree and the `g` pairwise coprime.
pub fn squarefree(f: &FqPoly) -> Result<Vec<(FqPoly, u32)>> {
    let p = f.field().characteristic();
    let mut out = Vec::new();
    if f.is_constant() {
        return Ok(out);
    }
    let fp = f.derivative();
    if fp.is_zero() {
        for (g, m) in squarefree(&f.pth_root())? {
            out.push((g, m * p));
        }
        return Ok(out);
    }
    let mut c = poly_gcd(f, &fp)?;
    let mut w = f.div_exact(&c)?;
    let mut i = 1;
    while !w.is_one() {
        let y = poly_gcd(&w, &c)?;
        let fac = w.div_exact(&y)?;
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.div_exact(&w)?;
        i += 1;
    }
    if !c.is_one() {
        for (g, m) in squarefree(&c.pth_root())? {
            out.push((g, m * p));
        }
    }
    Ok(out)
}

/// Splits a monic squarefree polynomial into products of irreducibles of
/// equal degree: pairs `(product, degree)`.
pub fn distinct_degree(f: &FqPoly) -> Result<Vec<(FqPoly, usize)>> {
    let field = f.field();
    let q = field.order() as u64;
    let x = FqPoly::var(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.deg().is_some_and(|n| n >= 2 * (d + 1)) {
        d += 1;
        h = h.powmod(q, &rest)?;
        let g = poly_gcd(&(&h - &x), &rest)?;
        if !g.is_one() {
            rest = rest.div_exact(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
    }
    if let Some(n) = rest.deg().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    Ok(out)
}

fn equal_degree(f: &FqPoly, d: usize, rng: &mut ChaCha8Rng) -> Result<Vec<FqPoly>> {
    let n = f.deg().unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let field = f.field();
    let q = field.order() as u64;
    let p = field.characteristic() as u64;
    loop {
        let a = FqPoly::new(
            field,
            (0..n).map(|_| field.elem(rng.random_range(0..q as u32))).collect(),
        );
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace down to F_2.
            let bits = (q.trailing_zeros() as usize) * d;
            let mut term = a.rem(f)?;
            let mut acc = term.clone();
            for _ in 1..bits {
                term = (&term * &term).rem(f)?;
                acc = &acc + &term;
            }
            acc
        } else {
            // a^((q^d - 1) / 2) via a^(1 + q + ... + q^(d-1)) raised to (q - 1) / 2.
            let mut s = a.rem(f)?;
            let mut norm = s.clone();
            for _ in 1..d {
                s = s.powmod(q, f)?;
                norm = (&norm * &s).rem(f)?;
            }
            &norm.powmod((q - 1) / 2, f)? - &FqPoly::one(field)
        };
        let g = poly_gcd(&b, f)?;
        if !g.is_one() && g.deg() != Some(n) {
            let mut out = equal_degree(&g, d, rng)?;
            out.extend(equal_degree(&f.div_exact(&g)?, d, rng)?);
            return Ok(out);
        }
    }
}

/// Rabin's test.
pub fn is_irreducible(f: &FqPoly) -> bool {
    let Some(n) = f.deg() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = f.field();
    let q = field.order() as u64;
    let x = FqPoly::var(field);
    let frob_pow = |k: usize| -> FqPoly {
        let mut h = x.clone();
        for _ in 0..k {
            h = h.powmod(q, f).expect("nonzero modulus");
        }
        h
    };
    if !(&frob_pow(n) - &x).rem(f).expect("nonzero modulus").is_zero() {
        return false;
    }
    prime_divisors(n).into_iter().all(|r| {
        let h = &frob_pow(n / r) - &x;
        poly_gcd(&h, f).is_ok_and(|g| g.is_one())
    })
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// All monic polynomials of degree `n`, constant term most significant.
pub fn monic_polys(field: &Field, n: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = field.order();
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |mut code| {
        let mut tail = vec![FqElem::ZERO; n];
        for slot in tail.iter_mut().rev() {
            *slot = field.elem((code % q as u64) as u32);
            code /= q as u64;
        }
        tail.push(FqElem::ONE);
        FqPoly::new(field, tail)
    })
}

pub fn monic_irreducibles(field: &Field, n: usize) -> Vec<FqPoly> {
    let mut out: Vec<_> = monic_polys(field, n).filter(is_irreducible).collect();
    out.sort();
    out
}

/// Lexicographically smallest monic irreducible of degree `n`.
pub fn smallest_irreducible(field: &Field, n: usize) -> FqPoly {
    monic_polys(field, n)
        .find(is_irreducible)
        .expect("irreducible polynomials exist in every degree")
}

/// `field[h]/(m)` for the smallest irreducible `m` of degree `e`.
pub fn extension_field(field: &Field, e: usize) -> Result<Field> {
    if e <= 1 {
        return Ok(field.clone());
    }
    let m = smallest_irreducible(field, e);
    let idx: Vec<u32> = m.coeffs().iter().map(|c| c.index()).collect();
    Field::quotient(field, &idx, 'h', None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld(q: u64) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn spec_examples() {
        let f2 = fld(2);
        let t2t = FqPoly::from_ints(&f2, &[0, 1, 1]);
        let fac = factorize(&t2t).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (FqPoly::from_ints(&f2, &[0, 1]), 1),
                (FqPoly::from_ints(&f2, &[1, 1]), 1)
            ]
        );
        let t2p1 = FqPoly::from_ints(&f2, &[1, 0, 1]);
        assert_eq!(
            factorize(&t2p1).unwrap().factors,
            vec![(FqPoly::from_ints(&f2, &[1, 1]), 2)]
        );
        let f3 = fld(3);
        let t2p1 = FqPoly::from_ints(&f3, &[1, 0, 1]);
        assert_eq!(factorize(&t2p1).unwrap().factors, vec![(t2p1.clone(), 1)]);
        assert_eq!(factorize(&FqPoly::zero(&f3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree n over F_q: (1/n) sum mu(d) q^(n/d).
        let expected = [(2u64, 1usize, 2usize), (2, 2, 1), (2, 3, 2), (2, 4, 3), (3, 2, 3), (4, 2, 6), (5, 2, 10)];
        for (q, n, count) in expected {
            assert_eq!(monic_irreducibles(&fld(q), n).len(), count, "q={q} n={n}");
        }
    }

    #[test]
    fn seeds_do_not_change_result() {
        let f3 = fld(3);
        let f = FqPoly::from_ints(&f3, &[2, 0, 1, 1, 0, 2, 1, 1, 0, 1]);
        let a = factorize_seeded(&f, 0).unwrap();
        for seed in 1..5 {
            assert_eq!(factorize_seeded(&f, seed).unwrap(), a);
        }
        assert_eq!(a.expand(&f3), f);
    }

    #[test]
    fn char_two_extension_factorization() {
        let f4 = fld(4);
        let f = FqPoly::from_ints(&f4, &[1, 0, 0, 0, 1]).shift(1); // t^5 + t
        let fac = factorize(&f).unwrap();
        assert_eq!(fac.expand(&f4), f);
        for (g, _) in &fac.factors {
            assert!(is_irreducible(g));
        }
    }

    #[test]
    fn extension_embeds_base() {
        let f4 = fld(4);
        let f16 = extension_field(&f4, 2).unwrap();
        assert_eq!(f16.order(), 16);
        for a in f4.elements() {
            for b in f4.elements() {
                assert_eq!(f16.mul(a, b), f4.mul(a, b));
                assert_eq!(f16.add(a, b), f4.add(a, b));
            }
        }
    }
}
