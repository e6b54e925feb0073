//! Closed-form real roots of polynomials up to degree four.
//!
//! Quartics go through Ferrari's resolvent cubic, cubics through Cardano (or
//! the trigonometric form when all three roots are real), quadratics through
//! the cancellation-free formula. Every closed-form root is then polished
//! with two Newton steps on the original coefficients.
//!
//! When the closed forms cannot be trusted (a leading coefficient that is
//! tiny but not negligible, or a polished root that still misses the
//! residual bound) the roots are instead isolated between the critical
//! points of the polynomial and refined by bisection.

use arrayvec::ArrayVec;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// At most four real roots; small enough to live on the stack.
pub type Roots<T> = ArrayVec<T, 4>;

/// Relative size below which a leading coefficient is treated as zero.
const LEADING_COEFF_TOL: f64 = 1e-12;
/// A complex pair whose imaginary part is below `IMAG_TOL * (1 + |re|)`
/// is reported as a (double) real root.
const IMAG_TOL: f64 = 1e-9;
/// Roots closer than this are merged, and roots this far outside the
/// requested interval are clamped onto it.
const ROOT_MERGE_TOL: f64 = 1e-9;
const NEWTON_STEPS: usize = 2;
/// Leading terms below this fraction of the largest term on the interval lose
/// too many digits in the monic closed forms.
const ILL_CONDITIONED_TOL: f64 = 1e-2;
const BISECTION_STEPS: usize = 200;

/// `c0 + c1 t + c2 t² + c3 t³ + c4 t⁴`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealPolynomial<T> {
    coeffs: [T; 5],
}

impl<T: Real> RealPolynomial<T> {
    /// Coefficients in ascending order of degree.
    pub fn new(coeffs: [T; 5]) -> Result<Self> {
        if coeffs.iter().all(|c| c.is_finite()) {
            Ok(Self { coeffs })
        } else {
            Err(Error::InvalidArgument(format!(
                "non-finite polynomial coefficients {coeffs:?}"
            )))
        }
    }

    #[inline]
    pub(crate) fn from_coeffs_unchecked(coeffs: [T; 5]) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T; 5] {
        &self.coeffs
    }

    pub fn max_abs_coeff(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, c| m.max(c.abs()))
    }

    #[inline]
    pub fn eval(&self, t: T) -> T {
        let [c0, c1, c2, c3, c4] = self.coeffs;
        (((c4 * t + c3) * t + c2) * t + c1) * t + c0
    }

    /// Value and first derivative at `t`.
    #[inline]
    pub fn eval_with_derivative(&self, t: T) -> (T, T) {
        let [c0, c1, c2, c3, c4] = self.coeffs;
        let two = lit::<T>(2.0);
        let three = lit::<T>(3.0);
        let four = lit::<T>(4.0);
        let value = (((c4 * t + c3) * t + c2) * t + c1) * t + c0;
        let slope = ((four * c4 * t + three * c3) * t + two * c2) * t + c1;
        (value, slope)
    }

    /// Residual every root returned on `[lo, hi]` is guaranteed to satisfy.
    pub fn residual_bound(&self, hi: T) -> T {
        lit::<T>(1e-6) * (T::one() + self.max_abs_coeff()) * T::one().max(hi.powi(4))
    }

    fn polish(&self, mut t: T) -> T {
        let (mut value, _) = self.eval_with_derivative(t);
        for _ in 0..NEWTON_STEPS {
            let (_, slope) = self.eval_with_derivative(t);
            if slope == T::zero() || value == T::zero() {
                break;
            }
            let next = t - value / slope;
            if !next.is_finite() {
                break;
            }
            let next_value = self.eval(next);
            if next_value.abs() > value.abs() {
                break;
            }
            t = next;
            value = next_value;
        }
        t
    }
}

/// Every real root of `poly` in `[lo, hi]`, ascending, with roots closer than
/// 1e-9 merged.
///
/// Falls back to the cubic, quadratic or linear formula when the leading
/// coefficients are negligible relative to the largest one. An identically
/// zero polynomial is reported as [`Error::DegeneratePolynomial`].
pub fn real_roots_in_interval<T: Real>(poly: &RealPolynomial<T>, lo: T, hi: T) -> Result<Roots<T>> {
    if !(lo <= hi) {
        return Err(Error::InvalidArgument(format!(
            "empty interval [{lo}, {hi}]"
        )));
    }
    let scale = poly.max_abs_coeff();
    if scale == T::zero() {
        return Err(Error::DegeneratePolynomial);
    }
    let [c0, c1, c2, c3, c4] = *poly.coeffs();
    let negligible = |c: T| c.abs() <= lit::<T>(LEADING_COEFF_TOL) * scale;

    let (raw, degree): (Roots<T>, i32) = if !negligible(c4) {
        (quartic_roots(c3 / c4, c2 / c4, c1 / c4, c0 / c4), 4)
    } else if !negligible(c3) {
        (
            cubic_roots(c2 / c3, c1 / c3, c0 / c3).into_iter().collect(),
            3,
        )
    } else if !negligible(c2) {
        (quadratic_roots(c2, c1, c0).into_iter().collect(), 2)
    } else if !negligible(c1) {
        (std::iter::once(-c0 / c1).collect(), 1)
    } else {
        (Roots::new(), 0)
    };

    let slack = lit::<T>(ROOT_MERGE_TOL);
    let mut roots = Roots::new();
    for r in raw {
        let t = poly.polish(r);
        if t >= lo - slack && t <= hi + slack {
            roots.push(t.max(lo).min(hi));
        }
    }
    let bound = poly.residual_bound(hi);
    // compare terms at the interval's own time scale
    let span = lo.abs().max(hi.abs());
    let span = if span > T::zero() { span } else { T::one() };
    let terms = poly.coeffs().map(|c| c.abs());
    let (mut largest, mut power) = (T::zero(), T::one());
    let mut lead = T::zero();
    for (k, c) in terms.into_iter().enumerate() {
        largest = largest.max(c * power);
        if k as i32 == degree {
            lead = c * power;
        }
        power = power * span;
    }
    let ill_conditioned = degree > 1 && lead < lit::<T>(ILL_CONDITIONED_TOL) * largest;
    if ill_conditioned || roots.iter().any(|&t| !(poly.eval(t).abs() <= bound)) {
        return Ok(merge_sorted(isolated_roots(poly.coeffs(), lo, hi, bound)));
    }
    Ok(merge_sorted(roots))
}

fn merge_sorted<T: Real, const N: usize>(mut roots: ArrayVec<T, N>) -> Roots<T> {
    roots.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());
    let slack = lit::<T>(ROOT_MERGE_TOL);
    let mut merged = Roots::new();
    for t in roots {
        match merged.last() {
            Some(&prev) if t - prev <= slack => {}
            _ => {
                if merged.try_push(t).is_err() {
                    break;
                }
            }
        }
    }
    merged
}

fn horner<T: Real>(c: &[T], t: T) -> T {
    c.iter().rev().fold(T::zero(), |acc, &ci| acc * t + ci)
}

/// Roots of `c[0] + c[1] t + …` on `[lo, hi]`: the polynomial is monotone
/// between consecutive critical points (found recursively), so each sign
/// change there brackets exactly one root. Critical points where
/// `|p| <= tangent_tol` are reported as touching roots.
fn isolated_roots<T: Real>(c: &[T], lo: T, hi: T, tangent_tol: T) -> ArrayVec<T, 8> {
    let mut out = ArrayVec::new();
    let Some(degree) = c.iter().rposition(|&x| x != T::zero()) else {
        return out;
    };
    let c = &c[..=degree];
    match degree {
        0 => return out,
        1 => {
            let t = -c[0] / c[1];
            if t >= lo && t <= hi {
                out.push(t);
            }
            return out;
        }
        _ => {}
    }

    let derivative: ArrayVec<T, 4> = (1..=degree).map(|k| lit::<T>(k as f64) * c[k]).collect();
    let d_scale = derivative.iter().fold(T::zero(), |m, d| m.max(d.abs()));
    let d_tol =
        lit::<T>(1e-6) * (T::one() + d_scale) * T::one().max(hi.abs().max(lo.abs()).powi(4));
    let critical = isolated_roots(&derivative, lo, hi, d_tol);

    let mut knots: ArrayVec<T, 10> = ArrayVec::new();
    knots.push(lo);
    knots.extend(critical.iter().copied().filter(|&t| t > lo && t < hi));
    knots.push(hi);
    knots.sort_unstable_by(|a, b| a.partial_cmp(b).unwrap());

    let p = |t: T| horner(c, t);
    for (i, w) in knots.windows(2).enumerate() {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (p(a), p(b));
        if fa == T::zero() || (i > 0 && fa.abs() <= tangent_tol) {
            let _ = out.try_push(a);
        }
        if fa != T::zero() && fb != T::zero() && (fa < T::zero()) != (fb < T::zero()) {
            let _ = out.try_push(bisect(&p, a, b, fa));
        }
    }
    if p(hi) == T::zero() {
        let _ = out.try_push(hi);
    }
    out
}

fn bisect<T: Real>(p: &impl Fn(T) -> T, mut a: T, mut b: T, mut fa: T) -> T {
    let two = lit::<T>(2.0);
    for _ in 0..BISECTION_STEPS {
        let m = (a + b) / two;
        if m <= a || m >= b {
            break;
        }
        let fm = p(m);
        if fm == T::zero() {
            return m;
        }
        if (fm < T::zero()) == (fa < T::zero()) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    (a + b) / two
}

#[inline]
fn is_near_real<T: Real>(re: T, im: T) -> bool {
    im.abs() <= lit::<T>(IMAG_TOL) * (T::one() + re.abs())
}

/// Real roots of `a t² + b t + c` with `a != 0`, in no particular order.
pub fn quadratic_roots<T: Real>(a: T, b: T, c: T) -> ArrayVec<T, 2> {
    quadratic_roots_shifted(a, b, c, T::zero())
}

/// Roots of `a y² + b y + c`, returned as `y - shift`. The shift only
/// affects the near-real test, which is judged on the unshifted variable.
fn quadratic_roots_shifted<T: Real>(a: T, b: T, c: T, shift: T) -> ArrayVec<T, 2> {
    let mut out = ArrayVec::new();
    let two = lit::<T>(2.0);
    let disc = b * b - lit::<T>(4.0) * a * c;
    if disc < T::zero() {
        let re = -b / (two * a);
        let im = (-disc).sqrt() / (two * a.abs());
        if is_near_real(re - shift, im) {
            out.push(re - shift);
        }
        return out;
    }
    let sq = disc.sqrt();
    let q = -(b + b.signum() * sq) / two;
    if q == T::zero() {
        // b == 0 and disc == 0, hence c == 0
        out.push(-shift);
        return out;
    }
    out.push(q / a - shift);
    out.push(c / q - shift);
    out
}

/// Real roots of the monic cubic `t³ + a t² + b t + c`, in no particular
/// order. A complex pair within the near-real tolerance is returned once.
pub fn cubic_roots<T: Real>(a: T, b: T, c: T) -> ArrayVec<T, 3> {
    let mut out = ArrayVec::new();
    let three = lit::<T>(3.0);
    let shift = a / three;
    // Depressed form y³ + p y + q with t = y - a/3.
    let p = b - a * a / three;
    let q = lit::<T>(2.0 / 27.0) * a * a * a - a * b / three + c;
    let half_q = q / lit(2.0);
    let third_p = p / three;
    let disc = half_q * half_q + third_p * third_p * third_p;

    if disc > T::zero() {
        let sq = disc.sqrt();
        let sign = if q >= T::zero() { T::one() } else { -T::one() };
        let u = (-half_q - sign * sq).cbrt();
        let v = if u == T::zero() {
            T::zero()
        } else {
            -third_p / u
        };
        let y = u + v;
        out.push(y - shift);
        let re = -y / lit(2.0) - shift;
        let im = lit::<T>(0.75).sqrt() * (u - v);
        if is_near_real(re, im) {
            out.push(re);
        }
    } else if p == T::zero() {
        out.push(-shift);
    } else {
        let r = (-third_p).sqrt();
        let cos_arg = (-half_q / (r * r * r)).max(-T::one()).min(T::one());
        let theta = cos_arg.acos() / three;
        let two_r = lit::<T>(2.0) * r;
        let step = lit::<T>(2.0) * T::PI() / three;
        for k in 0..3 {
            let y = two_r * (theta - step * lit(k as f64)).cos();
            out.push(y - shift);
        }
    }
    out
}

/// Real roots of the monic quartic `t⁴ + a t³ + b t² + c t + d`, in no
/// particular order, via Ferrari's method.
pub fn quartic_roots<T: Real>(a: T, b: T, c: T, d: T) -> Roots<T> {
    let mut out = Roots::new();
    let shift = a / lit(4.0);
    let a2 = a * a;
    // Depressed form y⁴ + p y² + q y + r with t = y - a/4.
    let p = b - lit::<T>(3.0 / 8.0) * a2;
    let q = a2 * a / lit(8.0) - a * b / lit(2.0) + c;
    let r = -lit::<T>(3.0 / 256.0) * a2 * a2 + a2 * b / lit(16.0) - a * c / lit(4.0) + d;

    let scale = T::one().max(p.abs()).max(r.abs().sqrt());
    if q.abs() <= T::epsilon() * scale * scale.sqrt() {
        // Biquadratic: z² + p z + r with z = y².
        for z in quadratic_roots(T::one(), p, r) {
            if z > T::zero() {
                let y = z.sqrt();
                out.push(y - shift);
                out.push(-y - shift);
            } else if is_near_real(-shift, (-z).sqrt()) {
                out.push(-shift);
            }
        }
        return out;
    }

    // Resolvent cubic 8m³ + 8p m² + (2p² − 8r) m − q² = 0; its largest root
    // is strictly positive whenever q != 0.
    let ra = p;
    let rb = p * p / lit(4.0) - r;
    let rc = -q * q / lit(8.0);
    let mut m = cubic_roots(ra, rb, rc)
        .into_iter()
        .fold(T::neg_infinity(), T::max);
    for _ in 0..NEWTON_STEPS {
        let f = ((m + ra) * m + rb) * m + rc;
        let df = (lit::<T>(3.0) * m + lit::<T>(2.0) * ra) * m + rb;
        if df == T::zero() {
            break;
        }
        let next = m - f / df;
        if next.is_finite() && next > T::zero() {
            m = next;
        }
    }
    if !(m > T::zero()) {
        return out;
    }

    let s = (lit::<T>(2.0) * m).sqrt();
    let half_p_plus_m = p / lit(2.0) + m;
    let q_term = q / (lit::<T>(2.0) * s);
    out.extend(quadratic_roots_shifted(
        T::one(),
        -s,
        half_p_plus_m + q_term,
        shift,
    ));
    out.extend(quadratic_roots_shifted(
        T::one(),
        s,
        half_p_plus_m - q_term,
        shift,
    ));
    out
}
