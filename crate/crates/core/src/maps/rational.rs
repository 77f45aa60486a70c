use std::fmt;

use serde::{Serialize, Serializer};

use crate::algebra::factor::factorize;
use crate::algebra::{poly_gcd, Field, FqPoly, Place, RatFunc};
use crate::error::{Error, Result};
use crate::projective::ProjPoint;

/// A binary form of degree `len - 1`; entry `j` is the coefficient of
/// `X^j Y^(d-j)`.
pub type Form = Vec<FqPoly>;

pub(crate) fn form_mul(a: &[FqPoly], b: &[FqPoly]) -> Form {
    let field = a[0].field();
    let mut out = vec![FqPoly::zero(field); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(ai * bj);
        }
    }
    out
}

/// `sum_j f_j P^j Q^(d-j)` for forms `P`, `Q` of equal degree.
pub(crate) fn form_compose(f: &[FqPoly], p: &[FqPoly], q: &[FqPoly]) -> Form {
    let d = f.len() - 1;
    let field = f[0].field();
    let one = vec![FqPoly::one(field)];
    let mut p_pows = vec![one.clone()];
    let mut q_pows = vec![one];
    for i in 0..d {
        p_pows.push(form_mul(&p_pows[i], p));
        q_pows.push(form_mul(&q_pows[i], q));
    }
    let mut out = vec![FqPoly::zero(field); d * (p.len() - 1) + 1];
    for (j, fj) in f.iter().enumerate() {
        if fj.is_zero() {
            continue;
        }
        for (k, c) in form_mul(&p_pows[j], &q_pows[d - j]).iter().enumerate() {
            out[k] = &out[k] + &(fj * c);
        }
    }
    out
}

pub(crate) fn form_eval(f: &[FqPoly], x: &FqPoly, y: &FqPoly) -> FqPoly {
    let d = f.len() - 1;
    let field = x.field();
    let mut xp = vec![FqPoly::one(field)];
    let mut yp = vec![FqPoly::one(field)];
    for i in 0..d {
        xp.push(&xp[i] * x);
        yp.push(&yp[i] * y);
    }
    f.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(FqPoly::zero(field), |acc, (j, c)| &acc + &(&(c * &xp[j]) * &yp[d - j]))
}

/// Determinant of a nonempty square matrix over `F_q[t]` by fraction-free
/// elimination.
pub fn bareiss_det(mut m: Vec<Vec<FqPoly>>) -> FqPoly {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut negate = false;
    let mut prev = FqPoly::one(&field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return FqPoly::zero(&field);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Sylvester matrix of two degree-`d` forms, coefficients listed from `X^d` down.
pub(crate) fn sylvester<T: Clone>(f: &[T], g: &[T], zero: T) -> Vec<Vec<T>> {
    let d = f.len() - 1;
    let n = 2 * d;
    let mut rows = Vec::with_capacity(n);
    for form in [f, g] {
        for shift in 0..d {
            let mut row = vec![zero.clone(); n];
            for (k, c) in form.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

pub fn form_resultant(f: &[FqPoly], g: &[FqPoly]) -> FqPoly {
    let field = f[0].field();
    if f.len() == 1 {
        return FqPoly::one(field);
    }
    bareiss_det(sylvester(f, g, FqPoly::zero(field)))
}

/// A morphism `[F : G]` of the projective line over `F_q(t)` in global
/// normalized form: coefficient content 1 and the first nonzero coefficient
/// (scanning `F` then `G` from `X^d` down) monic.
#[derive(Clone)]
pub struct RationalMap {
    f: Form,
    g: Form,
    resultant: FqPoly,
    bad: Vec<Place>,
}

impl RationalMap {
    pub fn new(f: Form, g: Form) -> Result<RationalMap> {
        if f.len() != g.len() {
            return Err(Error::DegreeMismatch);
        }
        if f.len() < 2 {
            return Err(Error::DegenerateMap);
        }
        let field = f[0].field().clone();
        if f.iter().chain(&g).any(|c| c.field() != &field) {
            return Err(Error::FieldMismatch);
        }
        let content = f
            .iter()
            .chain(&g)
            .filter(|c| !c.is_zero())
            .try_fold(FqPoly::zero(&field), |acc, c| poly_gcd(&acc, c))
            .map_err(|_| Error::DegenerateMap)?;
        if content.is_zero() {
            return Err(Error::DegenerateMap);
        }
        let lead = f
            .iter()
            .rev()
            .chain(g.iter().rev())
            .find(|c| !c.is_zero())
            .expect("content exists so some coefficient is nonzero")
            .leading();
        let content = content.scale(lead);
        let norm = |form: Form| -> Result<Form> {
            form.into_iter().map(|c| c.div_exact(&content)).collect()
        };
        let (f, g) = (norm(f)?, norm(g)?);
        let resultant = form_resultant(&f, &g);
        if resultant.is_zero() {
            return Err(Error::DegenerateMap);
        }
        let mut bad: Vec<Place> = factorize(&resultant)?
            .factors
            .into_iter()
            .map(|(pi, _)| Place::finite(pi))
            .collect::<Result<_>>()?;
        let m = max_coeff_degree(&f, &g);
        let d = f.len() - 1;
        if 2 * d * m > resultant.deg().expect("nonzero") {
            bad.push(Place::infinity(&field));
        }
        Ok(RationalMap { f, g, resultant, bad })
    }

    /// Forms with coefficients in `F_q(t)`; denominators are cleared.
    pub fn from_ratfuncs(f: &[RatFunc], g: &[RatFunc]) -> Result<RationalMap> {
        let Some(first) = f.first() else {
            return Err(Error::DegenerateMap);
        };
        let field = first.field().clone();
        let lcm = f.iter().chain(g).try_fold(FqPoly::one(&field), |acc, r| {
            let gcd = poly_gcd(&acc, r.den())?;
            Ok::<_, Error>(&acc.div_exact(&gcd)? * r.den())
        })?;
        let clear = |rs: &[RatFunc]| -> Result<Form> {
            rs.iter()
                .map(|r| Ok(&lcm.div_exact(r.den())? * r.num()))
                .collect()
        };
        RationalMap::new(clear(f)?, clear(g)?)
    }

    /// The affine map `num(X) / den(X)`; coefficient `i` multiplies `X^i`.
    pub fn from_affine(num: &[RatFunc], den: &[RatFunc]) -> Result<RationalMap> {
        let deg = |c: &[RatFunc]| c.iter().rposition(|r| !r.is_zero());
        let (Some(dn), Some(dd)) = (deg(num), deg(den)) else {
            return Err(if deg(den).is_none() {
                Error::DivisionByZero
            } else {
                Error::DegenerateMap
            });
        };
        let d = dn.max(dd);
        let field = num[0].field();
        let pad = |c: &[RatFunc]| -> Vec<RatFunc> {
            (0..=d)
                .map(|i| c.get(i).cloned().unwrap_or_else(|| RatFunc::zero(field)))
                .collect()
        };
        RationalMap::from_ratfuncs(&pad(num), &pad(den))
    }

    /// The polynomial map `sum coeffs[i] X^i`.
    pub fn polynomial(coeffs: &[FqPoly]) -> Result<RationalMap> {
        let d = coeffs
            .iter()
            .rposition(|c| !c.is_zero())
            .ok_or(Error::DegenerateMap)?;
        let field = coeffs[0].field();
        let mut g = vec![FqPoly::zero(field); d + 1];
        g[0] = FqPoly::one(field);
        RationalMap::new(coeffs[..=d].to_vec(), g)
    }

    pub fn identity(field: &Field) -> RationalMap {
        RationalMap::polynomial(&[FqPoly::zero(field), FqPoly::one(field)]).expect("identity is a morphism")
    }

    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    pub fn f(&self) -> &[FqPoly] {
        &self.f
    }

    pub fn g(&self) -> &[FqPoly] {
        &self.g
    }

    pub fn field(&self) -> &Field {
        self.f[0].field()
    }

    pub fn resultant(&self) -> &FqPoly {
        &self.resultant
    }

    /// Places of bad reduction, finite places first.
    pub fn bad_places(&self) -> &[Place] {
        &self.bad
    }

    pub fn is_bad(&self, place: &Place) -> bool {
        self.bad.contains(place)
    }

    /// Largest degree in `t` among all coefficients.
    pub fn max_coeff_degree(&self) -> usize {
        max_coeff_degree(&self.f, &self.g)
    }

    /// Whether `G` is a constant multiple of `Y^d`.
    pub fn is_polynomial(&self) -> bool {
        self.g[0].is_constant() && self.g[1..].iter().all(FqPoly::is_zero)
    }

    /// For a polynomial map, the coefficients of `F/G` in `X` over `F_q[t]`
    /// when `G` is a unit; `None` otherwise.
    pub fn polynomial_coeffs(&self) -> Option<Vec<FqPoly>> {
        if !self.is_polynomial() {
            return None;
        }
        let inv = self.field().inv(self.g[0].coeff(0)).ok()?;
        Some(self.f.iter().map(|c| c.scale(inv)).collect())
    }

    /// Whether every coefficient lies in `F_q`.
    pub fn is_constant(&self) -> bool {
        self.f.iter().chain(&self.g).all(FqPoly::is_constant)
    }

    pub fn evaluate(&self, p: &ProjPoint) -> ProjPoint {
        ProjPoint::new(form_eval(&self.f, p.x(), p.y()), form_eval(&self.g, p.x(), p.y()))
            .expect("nonzero resultant rules out a common zero")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RationalMap) -> Result<RationalMap> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        RationalMap::new(
            form_compose(&self.f, &other.f, &other.g),
            form_compose(&self.g, &other.f, &other.g),
        )
    }

    pub fn iterate(&self, n: usize) -> Result<RationalMap> {
        if n == 0 {
            return Err(Error::IterateZero);
        }
        let mut out = self.clone();
        for _ in 1..n {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    /// Re-reads all coefficients over an extension of the constant field.
    pub fn lift(&self, ext: &Field) -> Result<RationalMap> {
        let lift = |form: &Form| form.iter().map(|c| c.lift(ext)).collect();
        RationalMap::new(lift(&self.f), lift(&self.g))
    }

    /// Whether `self` and `other` agree as maps: `F G' = G F'`.
    pub fn same_map(&self, other: &RationalMap) -> bool {
        self.degree() == other.degree()
            && form_mul(&self.f, &other.g) == form_mul(&self.g, &other.f)
    }

    /// Homogeneous literal `[F : G]`.
    pub fn homogeneous_literal(&self) -> String {
        format!("[{} : {}]", format_form(&self.f), format_form(&self.g))
    }
}

pub(crate) fn max_coeff_degree(f: &[FqPoly], g: &[FqPoly]) -> usize {
    f.iter().chain(g).filter_map(FqPoly::deg).max().unwrap_or(0)
}

fn coeff_str(c: &FqPoly) -> (String, bool) {
    let s = c.to_string();
    let compound = s.contains('+');
    (s, compound)
}

fn term(c: &FqPoly, mono: String) -> String {
    let (s, compound) = coeff_str(c);
    match (mono.is_empty(), c.is_one(), compound) {
        (true, _, _) => s,
        (false, true, _) => mono,
        (false, false, true) => format!("({s})*{mono}"),
        (false, false, false) => format!("{s}*{mono}"),
    }
}

fn power(var: &str, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Formats a polynomial in `var` with coefficients in `F_q[t]`.
pub(crate) fn format_x_poly(coeffs: &[FqPoly], var: &str) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| term(c, power(var, j)))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

pub(crate) fn format_form(f: &[FqPoly]) -> String {
    let d = f.len() - 1;
    let terms: Vec<String> = f
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| {
            let mono = [power("X", j), power("Y", d - j)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            term(c, mono)
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl PartialEq for RationalMap {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f && self.g == other.g
    }
}

impl Eq for RationalMap {}

impl std::hash::Hash for RationalMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.f.hash(state);
        self.g.hash(state);
    }
}

/// Affine literal: `num` or `(num)/(den)` in the variable `X`.
impl fmt::Display for RationalMap {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = format_x_poly(&self.f, "X");
        if self.g[0].is_one() && self.g[1..].iter().all(FqPoly::is_zero) {
            return out.write_str(&num);
        }
        let den = format_x_poly(&self.g, "X");
        let wrap = |s: String| {
            if s.contains('+') || s.contains('*') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(out, "{}/{}", wrap(num), wrap(den))
    }
}

impl fmt::Debug for RationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalMap({})", self.homogeneous_literal())
    }
}

#[derive(Serialize)]
struct MapJson {
    degree: usize,
    literal: String,
    #[serde(rename = "F")]
    f: Vec<String>,
    #[serde(rename = "G")]
    g: Vec<String>,
    resultant: String,
    bad_places: Vec<String>,
}

impl Serialize for RationalMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MapJson {
            degree: self.degree(),
            literal: self.to_string(),
            f: self.f.iter().map(ToString::to_string).collect(),
            g: self.g.iter().map(ToString::to_string).collect(),
            resultant: self.resultant.to_string(),
            bad_places: self.bad.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}
