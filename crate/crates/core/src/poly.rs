//! Point-value polynomial machinery over F_p: evaluation, Lagrange
//! interpolation and root extraction.
//!
//! Coordinate counts here are tiny (a handful of points), so everything is
//! schoolbook arithmetic; no FFT.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::field::FieldContext;
use crate::{Error, Result};

/// Polynomial in coefficient form, lowest degree first, trailing zeros
/// trimmed. The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DensePoly {
    #[serde(with = "crate::ser::hex_big_vec")]
    coeffs: Vec<BigUint>,
}

/// Polynomial in point-value form: pairs `(x, y)` with distinct nonzero `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointValuePoly {
    #[serde(with = "crate::ser::hex_big_pairs")]
    pub points: Vec<(BigUint, BigUint)>,
}

impl PointValuePoly {
    pub fn new(points: Vec<(BigUint, BigUint)>) -> Result<Self> {
        for (i, (x, _)) in points.iter().enumerate() {
            if x.is_zero() {
                return Err(Error::MalformedPuzzle("zero x-coordinate".into()));
            }
            if points[..i].iter().any(|(x2, _)| x2 == x) {
                return Err(Error::DuplicateX);
            }
        }
        Ok(Self { points })
    }

    /// Evaluations of `poly` at the context x-coordinates.
    pub fn from_poly(poly: &DensePoly, ctx: &FieldContext) -> Self {
        let points = ctx
            .xs()
            .iter()
            .map(|x| (x.clone(), poly_eval(poly, x, ctx)))
            .collect();
        Self { points }
    }
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<BigUint>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_term(&self) -> BigUint {
        self.coeffs.first().cloned().unwrap_or_else(BigUint::zero)
    }

    /// `x + c`
    pub fn linear(c: BigUint, ctx: &FieldContext) -> Self {
        Self::new(vec![ctx.reduce(&c), BigUint::one()])
    }

    /// `x - r`
    pub fn linear_with_root(r: &BigUint, ctx: &FieldContext) -> Self {
        Self::new(vec![ctx.neg(r), BigUint::one()])
    }

    pub fn add(&self, other: &Self, ctx: &FieldContext) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        let zero = BigUint::zero();
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            out.push(ctx.add(a, b));
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self, ctx: &FieldContext) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        let zero = BigUint::zero();
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = other.coeffs.get(i).unwrap_or(&zero);
            out.push(ctx.sub(a, b));
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self, ctx: &FieldContext) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigUint::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, a: &BigUint, ctx: &FieldContext) -> Self {
        Self::new(self.coeffs.iter().map(|c| ctx.mul(c, a)).collect())
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self, ctx: &FieldContext) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let lead_inv = ctx.inv(divisor.coeffs.last().unwrap());
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        let qlen = rem.len() - dlen + 1;
        let mut q = vec![BigUint::zero(); qlen];
        for k in (0..qlen).rev() {
            let factor = ctx.mul(&rem[k + dlen - 1], &lead_inv);
            if factor.is_zero() {
                continue;
            }
            q[k] = factor.clone();
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = ctx.sub(&rem[k + i], &ctx.mul(&factor, d));
            }
        }
        (Self::new(q), Self::new(rem))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self, ctx: &FieldContext) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b, ctx);
            a = b;
            b = r;
        }
        a.into_monic(ctx)
    }

    fn into_monic(self, ctx: &FieldContext) -> Self {
        match self.coeffs.last() {
            None => self,
            Some(lead) if lead.is_one() => self,
            Some(lead) => {
                let inv = ctx.inv(lead);
                self.scale(&inv, ctx)
            }
        }
    }

    /// `base^e mod (self)` in F_p[x].
    fn powmod(&self, base: &Self, e: &BigUint, ctx: &FieldContext) -> Self {
        let (_, mut acc) = DensePoly::new(vec![BigUint::one()]).div_rem(self, ctx);
        let (_, mut sq) = base.div_rem(self, ctx);
        for bit in 0..e.bits() {
            if e.bit(bit) {
                acc = acc.mul(&sq, ctx).div_rem(self, ctx).1;
            }
            if bit + 1 < e.bits() {
                sq = sq.mul(&sq, ctx).div_rem(self, ctx).1;
            }
        }
        acc
    }
}

/// Horner evaluation of `poly` at `x`.
pub fn poly_eval(poly: &DensePoly, x: &BigUint, ctx: &FieldContext) -> BigUint {
    let mut acc = BigUint::zero();
    for c in poly.coeffs().iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), c);
    }
    acc
}

/// Lagrange interpolation: the unique polynomial of degree below the point
/// count passing through every pair.
pub fn interpolate(points: &PointValuePoly, ctx: &FieldContext) -> Result<DensePoly> {
    let pts = &points.points;
    if pts.is_empty() {
        return Err(Error::EmptyInterpolation);
    }
    for (i, (x, _)) in pts.iter().enumerate() {
        if pts[..i].iter().any(|(x2, _)| x2 == x) {
            return Err(Error::DuplicateX);
        }
    }
    // full = prod (x - x_j); basis_i = full / (x - x_i)
    let mut full = DensePoly::new(vec![BigUint::one()]);
    for (x, _) in pts {
        full = full.mul(&DensePoly::linear_with_root(x, ctx), ctx);
    }
    let mut acc = DensePoly::zero();
    for (xi, yi) in pts {
        let (basis, rem) = full.div_rem(&DensePoly::linear_with_root(xi, ctx), ctx);
        debug_assert!(rem.is_zero());
        let denom = poly_eval(&basis, xi, ctx);
        let w = ctx.mul(yi, &ctx.inv(&denom));
        acc = acc.add(&basis.scale(&w, ctx), ctx);
    }
    Ok(acc)
}

/// Multiplies every y-coordinate by `a`; interpolating the result yields
/// `a` times the polynomial interpolated from the input.
pub fn scale_points(points: &PointValuePoly, a: &BigUint, ctx: &FieldContext) -> PointValuePoly {
    PointValuePoly {
        points: points
            .points
            .iter()
            .map(|(x, y)| (x.clone(), ctx.mul(y, a)))
            .collect(),
    }
}

/// Every root of `poly` in F_p, each verified by evaluation before return.
///
/// Splits off the squarefree product of linear factors with
/// `gcd(x^p - x, poly)`, then separates roots by evaluating the quadratic
/// character of shifted arguments. Shifts run through a deterministic
/// sequence so the whole function is a pure function of its inputs.
pub fn find_roots(poly: &DensePoly, ctx: &FieldContext) -> Result<BTreeSet<BigUint>> {
    if poly.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = BTreeSet::new();
    if poly.degree() == Some(0) {
        return Ok(roots);
    }
    let x = DensePoly::new(vec![BigUint::zero(), BigUint::one()]);
    let xp = poly.powmod(&x, ctx.prime(), ctx);
    let g = xp.sub(&x, ctx).gcd(poly, ctx);
    if g.degree().unwrap_or(0) >= 1 {
        split_linear(&g, ctx, &mut roots)?;
    }
    for r in &roots {
        debug_assert!(poly_eval(poly, r, ctx).is_zero());
    }
    Ok(roots)
}

/// Extracts the roots of a monic product of distinct linear factors.
fn split_linear(g: &DensePoly, ctx: &FieldContext, roots: &mut BTreeSet<BigUint>) -> Result<()> {
    match g.degree() {
        None | Some(0) => return Ok(()),
        Some(1) => {
            roots.insert(ctx.neg(&g.constant_term()));
            return Ok(());
        }
        _ => {}
    }
    let one = BigUint::one();
    let half = (ctx.prime() - &one) >> 1;
    let mut shift = BigUint::zero();
    // Each shift separates the roots with probability about 1/2.
    let budget = 64 + 4 * ctx.prime().bits();
    for _ in 0..budget {
        let minus_shift = ctx.neg(&shift);
        if poly_eval(g, &minus_shift, ctx).is_zero() {
            roots.insert(minus_shift.clone());
            let (rest, rem) =
                g.div_rem(&DensePoly::linear_with_root(&minus_shift, ctx), ctx);
            debug_assert!(rem.is_zero());
            return split_linear(&rest, ctx, roots);
        }
        let base = DensePoly::new(vec![shift.clone(), one.clone()]);
        let w = g.powmod(&base, &half, ctx);
        let d = w.sub(&DensePoly::new(vec![one.clone()]), ctx).gcd(g, ctx);
        let ddeg = d.degree().unwrap_or(0);
        if ddeg >= 1 && ddeg < g.degree().unwrap() {
            let (other, rem) = g.div_rem(&d, ctx);
            debug_assert!(rem.is_zero());
            split_linear(&d, ctx, roots)?;
            return split_linear(&other, ctx, roots);
        }
        shift += &one;
    }
    Err(Error::SamplingExhausted)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{ctx_97, rng};
    use num_bigint::RandBigInt;

    fn b(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn eval_line() {
        let ctx = ctx_97();
        let poly = DensePoly::new(vec![b(3), b(1)]); // x + 3
        assert_eq!(poly_eval(&poly, &b(1), &ctx), b(4));
    }

    #[test]
    fn eval_zero_polynomial() {
        let ctx = ctx_97();
        let poly = DensePoly::zero();
        for x in 0..10u64 {
            assert_eq!(poly_eval(&poly, &b(x), &ctx), b(0));
        }
    }

    /// Brute-force power-sum oracle: sum c_k * x^k term by term.
    fn eval_oracle(poly: &DensePoly, x: &BigUint, ctx: &FieldContext) -> BigUint {
        let mut acc = BigUint::zero();
        for (k, c) in poly.coeffs().iter().enumerate() {
            let xk = ctx.pow(x, &BigUint::from(k));
            acc = ctx.add(&acc, &ctx.mul(c, &xk));
        }
        acc
    }

    #[test]
    fn eval_matches_power_sum_oracle() {
        let ctx = ctx_97();
        let mut rng = rng(7);
        let poly = DensePoly::new((0..5).map(|_| ctx.rand_element(&mut rng)).collect());
        for _ in 0..10 {
            let x = ctx.rand_element(&mut rng);
            assert_eq!(poly_eval(&poly, &x, &ctx), eval_oracle(&poly, &x, &ctx));
        }
    }

    #[test]
    fn interpolate_line_through_collinear_points() {
        let ctx = ctx_97();
        let pts = PointValuePoly::new(vec![(b(1), b(4)), (b(2), b(5)), (b(3), b(6))]).unwrap();
        let poly = interpolate(&pts, &ctx).unwrap();
        assert_eq!(poly.coeffs(), &[b(3), b(1)]);
    }

    #[test]
    fn interpolate_constant() {
        let ctx = ctx_97();
        let pts = PointValuePoly::new(vec![(b(1), b(5)), (b(2), b(5)), (b(3), b(5))]).unwrap();
        let poly = interpolate(&pts, &ctx).unwrap();
        assert_eq!(poly.coeffs(), &[b(5)]);
    }

    #[test]
    fn interpolate_rejects_duplicate_x() {
        let ctx = ctx_97();
        let pts = PointValuePoly {
            points: vec![(b(1), b(4)), (b(1), b(5))],
        };
        assert!(matches!(interpolate(&pts, &ctx), Err(Error::DuplicateX)));
    }

    #[test]
    fn interpolation_round_trip() {
        let ctx = ctx_97();
        let mut rng = rng(3);
        for _ in 0..50 {
            let poly = DensePoly::new((0..3).map(|_| ctx.rand_element(&mut rng)).collect());
            let pts = PointValuePoly::from_poly(&poly, &ctx);
            assert_eq!(interpolate(&pts, &ctx).unwrap(), poly);
        }
    }

    #[test]
    fn scaling_points_scales_the_polynomial() {
        let ctx = ctx_97();
        let mut rng = rng(11);
        let poly = DensePoly::new((0..3).map(|_| ctx.rand_element(&mut rng)).collect());
        let pts = PointValuePoly::from_poly(&poly, &ctx);

        let zeroed = scale_points(&pts, &b(0), &ctx);
        assert!(zeroed.points.iter().all(|(_, y)| y.is_zero()));
        assert_eq!(scale_points(&pts, &b(1), &ctx), pts);

        let scaled = scale_points(&pts, &b(7), &ctx);
        assert_eq!(
            interpolate(&scaled, &ctx).unwrap(),
            poly.scale(&b(7), &ctx)
        );
    }

    fn brute_force_roots(poly: &DensePoly, ctx: &FieldContext) -> BTreeSet<BigUint> {
        let p: u64 = ctx.prime().try_into().unwrap();
        (0..p)
            .map(BigUint::from)
            .filter(|x| poly_eval(poly, x, ctx).is_zero())
            .collect()
    }

    #[test]
    fn quadratic_with_two_roots() {
        let ctx = ctx_97();
        // (x - 10)(x - 20) = x^2 - 30x + 200 = x^2 + 67x + 6 mod 97
        let poly = DensePoly::new(vec![b(6), b(67), b(1)]);
        let roots = find_roots(&poly, &ctx).unwrap();
        assert_eq!(roots, [b(10), b(20)].into());
        assert_eq!(roots, brute_force_roots(&poly, &ctx));
    }

    #[test]
    fn linear_root() {
        let ctx = ctx_97();
        let poly = DensePoly::new(vec![b(3), b(1)]);
        assert_eq!(find_roots(&poly, &ctx).unwrap(), [b(94)].into());
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        let ctx = ctx_97();
        // x^2 - 5: 5 is a quadratic nonresidue mod 97
        let poly = DensePoly::new(vec![b(92), b(0), b(1)]);
        let roots = find_roots(&poly, &ctx).unwrap();
        assert!(roots.is_empty());
        assert_eq!(roots, brute_force_roots(&poly, &ctx));
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let ctx = ctx_97();
        assert!(matches!(
            find_roots(&DensePoly::zero(), &ctx),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn root_product_divides_polynomial() {
        let ctx = ctx_97();
        let mut rng = rng(23);
        for _ in 0..50 {
            let poly = DensePoly::new((0..5).map(|_| ctx.rand_element(&mut rng)).collect());
            if poly.is_zero() || poly.degree() == Some(0) {
                continue;
            }
            let roots = find_roots(&poly, &ctx).unwrap();
            assert_eq!(roots, brute_force_roots(&poly, &ctx));
            let mut prod = DensePoly::new(vec![BigUint::one()]);
            for r in &roots {
                prod = prod.mul(&DensePoly::linear_with_root(r, &ctx), &ctx);
            }
            let (_, rem) = poly.div_rem(&prod, &ctx);
            assert!(rem.is_zero());
        }
    }

    #[test]
    fn product_of_roots_structure() {
        // (x - rho) * sum q_j (x + m_j), evaluated at the ctx coordinates and
        // re-interpolated, has constant term -rho * sum q_j m_j.
        let ctx = crate::testutil::ctx_128(3);
        let mut rng = rng(5);
        for _ in 0..20 {
            let rho = ctx.rand_element(&mut rng);
            let (ms, qs): (Vec<BigUint>, Vec<BigUint>) = (0..4)
                .map(|_| {
                    (
                        rng.gen_biguint(60).min(ctx.prime() - BigUint::one()),
                        ctx.rand_element(&mut rng),
                    )
                })
                .unzip();
            let mut sum = DensePoly::zero();
            for (m, q) in ms.iter().zip(&qs) {
                sum = sum.add(&DensePoly::linear(m.clone(), &ctx).scale(q, &ctx), &ctx);
            }
            let theta = DensePoly::linear_with_root(&rho, &ctx).mul(&sum, &ctx);
            let pts = PointValuePoly::from_poly(&theta, &ctx);
            let back = interpolate(&pts, &ctx).unwrap();
            assert_eq!(back, theta);
            let mut expect = BigUint::zero();
            for (m, q) in ms.iter().zip(&qs) {
                expect = ctx.add(&expect, &ctx.mul(m, q));
            }
            expect = ctx.mul(&ctx.neg(&rho), &expect);
            assert_eq!(back.constant_term(), expect);
        }
    }

    #[test]
    fn division_and_gcd_sanity() {
        let ctx = ctx_97();
        let a = DensePoly::new(vec![b(6), b(67), b(1)]); // (x-10)(x-20)
        let d = DensePoly::linear_with_root(&b(10), &ctx);
        let (q, r) = a.div_rem(&d, &ctx);
        assert!(r.is_zero());
        assert_eq!(q, DensePoly::linear_with_root(&b(20), &ctx));
        let g = a.gcd(&DensePoly::linear_with_root(&b(10), &ctx), &ctx);
        assert_eq!(g, DensePoly::linear_with_root(&b(10), &ctx));
    }
}
