//! Weierstrass `℘`, `ζ`, `σ` as exact truncated series, and the three
//! presentations of the elliptic characteristic series `f` and its Jacobian
//! factor `A(t, r)`.
//!
//! * [`AlgebraicFamily`] integrates `f'/f = -½(℘' - b)/(℘ - a) + k`.
//! * [`SigmaFamily`] builds `f = e^{(k+ζ(z))x} σ(x)σ(z)/σ(x+z)` with `z`
//!   symbolic: every `z`-dependent scalar is a truncated Laurent series in `z`
//!   over `ℚ[g2, g3, k]` (the [`ZRing`]).
//! * [`TrigFamily`] is the degenerate `f = e^{kx} sinh(sx)/s`.

use crate::error::{Error, Result};
use crate::ring::{factorial, int, rat, ParamPoly, Rational, Ring};
use crate::series::{exp_linear, LaurentSeries, Series};

/// Scalars depending on a symbolic point `z`: Laurent series in `z` over
/// `ℚ[g2, g3, k]`.
pub type ZRing = LaurentSeries<ParamPoly>;

/// `℘ = t^{-2} + Σ_{m>=1} c_m t^{2m}`, known through `t^order`.
///
/// `c_1 = g2/20`, `c_2 = g3/28`, and for `m >= 3`
/// `c_m = 3/((2m+3)(m-2)) Σ_{k=1}^{m-2} c_k c_{m-1-k}`.
pub fn wp_series<R: Ring>(g2: &R, g3: &R, order: usize) -> LaurentSeries<R> {
    let cs = wp_coefficients(g2, g3, order / 2);
    let mut coeffs = vec![R::zero(); order + 3];
    coeffs[0] = R::one();
    for (m, c) in cs.iter().enumerate().skip(1) {
        coeffs[2 * m + 2] = c.clone();
    }
    LaurentSeries::truncated(-2, coeffs, order as i64)
}

/// `c_0..=c_mmax` with `c_0 = 0` as a placeholder.
fn wp_coefficients<R: Ring>(g2: &R, g3: &R, mmax: usize) -> Vec<R> {
    let mut c = vec![R::zero(); mmax.max(2) + 1];
    c[1] = g2.scale(&rat(1, 20));
    c[2] = g3.scale(&rat(1, 28));
    for m in 3..=mmax {
        let mut acc = R::zero();
        for k in 1..=m - 2 {
            acc.add_mul(&c[k], &c[m - 1 - k]);
        }
        c[m] = acc.scale(&rat(3, ((2 * m + 3) * (m - 2)) as i64));
    }
    c.truncate(mmax + 1);
    c
}

/// `℘`, `ζ` and `σ` for one pair `(g2, g3)`.
#[derive(Clone, Debug)]
pub struct WeierstrassData<R: Ring> {
    g2: R,
    g3: R,
    wp: LaurentSeries<R>,
    zeta: LaurentSeries<R>,
    sigma: Series<R>,
}

impl<R: Ring> WeierstrassData<R> {
    /// `℘` through `t^order`, `ζ` through `t^{order+1}`, `σ` through
    /// `t^{order+2}`.
    pub fn new(g2: R, g3: R, order: usize) -> Self {
        let order = order.max(2);
        let wp = wp_series(&g2, &g3, order);
        let (zeta, sigma) = zeta_sigma_series(&wp, order);
        WeierstrassData {
            g2,
            g3,
            wp,
            zeta,
            sigma,
        }
    }

    pub fn g2(&self) -> &R {
        &self.g2
    }

    pub fn g3(&self) -> &R {
        &self.g3
    }

    pub fn wp(&self) -> &LaurentSeries<R> {
        &self.wp
    }

    pub fn zeta(&self) -> &LaurentSeries<R> {
        &self.zeta
    }

    pub fn sigma(&self) -> &Series<R> {
        &self.sigma
    }
}

/// `ζ = 1/t - Σ c_m t^{2m+1}/(2m+1)` and `σ = t·exp(∫(ζ - 1/t))` from a `℘`
/// series known through `t^order`.
pub fn zeta_sigma_series<R: Ring>(wp: &LaurentSeries<R>, order: usize) -> (LaurentSeries<R>, Series<R>) {
    let mut zeta = vec![R::zero(); order + 3];
    zeta[0] = R::one();
    let mut log_sigma_over_t = vec![R::zero(); order + 3];
    for k in (2..=order).step_by(2) {
        let c = wp.coeff(k as i64);
        zeta[k + 2] = c.scale(&rat(-1, k as i64 + 1));
        log_sigma_over_t[k + 2] = c.scale(&rat(-1, ((k + 1) * (k + 2)) as i64));
    }
    let zeta = LaurentSeries::truncated(-1, zeta, order as i64 + 1);
    let sigma = Series::new(log_sigma_over_t, order + 1)
        .exp()
        .expect("zero constant term")
        .mul_x_pow(1);
    (zeta, sigma)
}

/// `f` from `f'/f = -½(℘'(x) - b)/(℘(x) - a) + k`, with `g3 = 4a³ - g2 a - b²`.
#[derive(Clone, Debug)]
pub struct AlgebraicFamily<R: Ring> {
    pub k: R,
    pub a: R,
    pub b: R,
    pub g2: R,
}

impl AlgebraicFamily<ParamPoly> {
    /// All four parameters free, named `k, a, b, g2`.
    pub fn generic() -> Self {
        AlgebraicFamily {
            k: ParamPoly::var("k"),
            a: ParamPoly::var("a"),
            b: ParamPoly::var("b"),
            g2: ParamPoly::var("g2"),
        }
    }
}

impl<R: Ring> AlgebraicFamily<R> {
    pub fn g3(&self) -> R {
        let a3 = self.a.pow(3).scale(&int(4));
        a3.sub(&self.g2.mul(&self.a)).sub(&self.b.mul(&self.b))
    }

    /// `f` through `x^order`.
    pub fn f(&self, order: usize) -> Result<Series<R>> {
        let wp = wp_series(&self.g2, &self.g3(), order + 2);
        let den = wp.sub(&LaurentSeries::monomial(self.a.clone(), 0));
        let den_inv = den.try_inverse().map_err(|_| {
            Error::NotInvertible("℘(x) - a has a non-unit leading coefficient".into())
        })?;
        let num = wp.derivative().sub(&LaurentSeries::monomial(self.b.clone(), 0));
        // f'/f = 1/x + (regular part)
        let log_deriv = num
            .mul(&den_inv)
            .scale(&rat(-1, 2))
            .add(&LaurentSeries::monomial(self.k.clone(), 0));
        let regular = log_deriv.sub(&LaurentSeries::t_pow(-1));
        let regular = regular.to_series(order - 1)?;
        Ok(regular.integral().exp()?.mul_x_pow(1).truncate(order))
    }
}

/// The `σ`-quotient presentation with a symbolic point `z`.
#[derive(Clone, Debug)]
pub struct SigmaFamily {
    k: ParamPoly,
    w: WeierstrassData<ParamPoly>,
    z_order: usize,
}

impl SigmaFamily {
    /// `g2`, `g3`, `k` free; `z`-series kept through `z^{z_order}`.
    pub fn generic(z_order: usize) -> Self {
        Self::new(ParamPoly::var("k"), ParamPoly::var("g2"), ParamPoly::var("g3"), z_order)
    }

    pub fn new(k: ParamPoly, g2: ParamPoly, g3: ParamPoly, z_order: usize) -> Self {
        SigmaFamily {
            k,
            w: WeierstrassData::new(g2, g3, z_order),
            z_order,
        }
    }

    pub fn weierstrass(&self) -> &WeierstrassData<ParamPoly> {
        &self.w
    }

    pub fn z_order(&self) -> usize {
        self.z_order
    }

    fn lift(c: &ParamPoly) -> ZRing {
        LaurentSeries::monomial(c.clone(), 0)
    }

    /// `℘(z)`, `℘'(z)`, `ζ(z)`, `σ(z)` as elements of the z-ring.
    pub fn wp_z(&self) -> ZRing {
        self.w.wp().clone()
    }

    pub fn wp_prime_z(&self) -> ZRing {
        self.w.wp().derivative()
    }

    pub fn zeta_z(&self) -> ZRing {
        self.w.zeta().clone()
    }

    pub fn sigma_z(&self) -> ZRing {
        LaurentSeries::from_series(self.w.sigma(), 0)
    }

    /// `σ(x + rz)/σ(rz) = Σ_j x^j σ^{(j)}(rz)/(j! σ(rz))` through `x^order`.
    fn shift_ratio(&self, r: &Rational, order: usize) -> Result<Series<ZRing>> {
        let sigma = self.sigma_z();
        let base_inv = sigma.scale_arg(r).try_inverse()?;
        let mut deriv = sigma;
        let mut coeffs = Vec::with_capacity(order + 1);
        for j in 0..=order {
            if j > 0 {
                deriv = deriv.derivative();
            }
            coeffs.push(
                deriv
                    .scale_arg(r)
                    .mul(&base_inv)
                    .scale(&factorial(j as u64).recip()),
            );
        }
        Ok(Series::new(coeffs, order))
    }

    /// `σ(x)` with z-constant coefficients.
    fn sigma_x(&self, order: usize) -> Result<Series<ZRing>> {
        if self.w.sigma().order() < order {
            return Err(Error::Precondition(format!(
                "z_order {} too small for x order {order}",
                self.z_order
            )));
        }
        Ok(self.w.sigma().truncate(order).map(Self::lift))
    }

    /// `f = e^{(k+ζ(z))x} σ(x)σ(z)/σ(x+z)` through `x^order`.
    pub fn f(&self, order: usize) -> Result<Series<ZRing>> {
        let c = Self::lift(&self.k).add(&self.zeta_z());
        let twist = exp_linear(&c, order);
        let ratio = self.shift_ratio(&int(1), order)?;
        Ok(twist
            .mul(&self.sigma_x(order)?)
            .mul(&ratio.invert_unit()?))
    }

    /// `A(t, r) = e^{-(r-1)(k+ζ(z))t} σ(t+rz)σ(z)/(σ(t+z)σ(rz))` through
    /// `t^order`, for rational `r ≠ 0`.
    pub fn jacobian_a(&self, r: &Rational, order: usize) -> Result<Series<ZRing>> {
        if Ring::is_zero(r) {
            return Err(Error::Precondition(
                "A(t, 0) is undefined: σ(0·z) vanishes".into(),
            ));
        }
        let one = int(1);
        let c = Self::lift(&self.k)
            .add(&self.zeta_z())
            .scale(&(&one - r));
        let twist = exp_linear(&c, order);
        let num = self.shift_ratio(r, order)?;
        let den = self.shift_ratio(&one, order)?;
        Ok(twist.mul(&num).mul(&den.invert_unit()?))
    }
}

/// `f = e^{kx} sinh(sx)/s` with `s2 = s²`; `A` is known for `r ∈ {1, 2}`.
#[derive(Clone, Debug)]
pub struct TrigFamily<R: Ring> {
    pub k: R,
    pub s2: R,
    pub a1: R,
}

impl TrigFamily<ParamPoly> {
    pub fn generic() -> Self {
        TrigFamily {
            k: ParamPoly::var("k"),
            s2: ParamPoly::var("s2"),
            a1: ParamPoly::var("a1"),
        }
    }
}

/// `sinh(sx)/s` and `cosh(sx)` in terms of `s²`.
pub fn sinh_cosh<R: Ring>(s2: &R, order: usize) -> (Series<R>, Series<R>) {
    let mut sinh = vec![R::zero(); order + 1];
    let mut cosh = vec![R::zero(); order + 1];
    let mut p = R::one();
    for m in 0..=order / 2 {
        cosh[2 * m] = p.scale(&factorial(2 * m as u64).recip());
        if 2 * m < order {
            sinh[2 * m + 1] = p.scale(&factorial(2 * m as u64 + 1).recip());
        }
        p = p.mul(s2);
    }
    (Series::new(sinh, order), Series::new(cosh, order))
}

impl<R: Ring> TrigFamily<R> {
    pub fn f(&self, order: usize) -> Series<R> {
        let (sinh, _) = sinh_cosh(&self.s2, order);
        exp_linear(&self.k, order).mul(&sinh)
    }

    /// `A(x, 2) = e^{-kx}(a1 sinh(sx)/s + cosh(sx))` and `A(x, 1) = 1`.
    pub fn jacobian_a(&self, r: u32, order: usize) -> Result<Series<R>> {
        match r {
            1 => Ok(Series::one(order)),
            2 => {
                let (sinh, cosh) = sinh_cosh(&self.s2, order);
                Ok(exp_linear(&self.k.neg(), order).mul(&sinh.scale_by(&self.a1).add(&cosh)))
            }
            _ => Err(Error::Unsupported(format!(
                "the sinh degeneration has no Jacobian factor for r = {r}"
            ))),
        }
    }
}
