//! Small quadrature helpers: adaptive Simpson on finite intervals and a
//! power-law substitution for endpoint singularities of the form
//! `x^{-γ} g(x)` with `γ < 1`.

/// Adaptive Simpson quadrature of `f` on `[a, b]`.
///
/// `tol` is an absolute tolerance for the whole interval; the recursion
/// splits it in the usual way. Depth is capped so pathological integrands
/// terminate.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

/// ∫₀^b x^{-gamma} g(x) dx for `0 ≤ gamma < 1` and smooth `g`.
///
/// Substitutes `x = s^{1/(1-γ)}` so the integrand becomes smooth at the
/// left endpoint, then integrates adaptively.
pub fn integrate_power_singularity<G: Fn(f64) -> f64>(g: &G, gamma: f64, b: f64, tol: f64) -> f64 {
    assert!((0.0..1.0).contains(&gamma), "exponent must be in [0, 1)");
    if gamma == 0.0 {
        return adaptive_simpson(g, 0.0, b, tol);
    }
    let p = 1.0 / (1.0 - gamma);
    let s_max = b.powf(1.0 - gamma);
    let h = |s: f64| {
        if s <= 0.0 {
            // x^{-γ}·g(x)·dx/ds = p·g(s^p); finite at s = 0.
            p * g(0.0)
        } else {
            let x = s.powf(p);
            p * g(x)
        }
    };
    adaptive_simpson(&h, 0.0, s_max, tol)
}

/// Nodes/weights of the 8-point Gauss–Legendre rule on `[-1, 1]`.
pub const GL8_NODES: [f64; 8] = [
    -0.960_289_856_497_536_2,
    -0.796_666_477_413_626_7,
    -0.525_532_409_916_329,
    -0.183_434_642_495_649_8,
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_2,
];

pub const GL8_WEIGHTS: [f64; 8] = [
    0.101_228_536_290_376_26,
    0.222_381_034_453_374_47,
    0.313_706_645_877_887_3,
    0.362_683_783_378_362,
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_47,
    0.101_228_536_290_376_26,
];

/// 8-point Gauss–Legendre on `[a, b]`.
pub fn gauss8<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let c = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for (x, w) in GL8_NODES.iter().zip(GL8_WEIGHTS.iter()) {
        acc += w * f(c + half * x);
    }
    acc * half
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn simpson_integrates_polynomials_exactly() {
        let f = |x: f64| 3.0 * x * x;
        assert_relative_eq!(adaptive_simpson(&f, 0.0, 2.0, 1e-12), 8.0, epsilon = 1e-12);
    }

    #[test]
    fn simpson_handles_gaussian_mass() {
        let f = |x: f64| (-x * x).exp();
        let v = adaptive_simpson(&f, -10.0, 10.0, 1e-12);
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), epsilon = 1e-10);
    }

    #[test]
    fn singular_endpoint_rule_matches_closed_form() {
        // ∫₀¹ x^{-1/2} dx = 2
        let v = integrate_power_singularity(&|_| 1.0, 0.5, 1.0, 1e-12);
        assert_relative_eq!(v, 2.0, epsilon = 1e-10);
        // ∫₀² x^{-0.75}·e^{-x} dx against a high-resolution reference.
        let v = integrate_power_singularity(&|x: f64| (-x).exp(), 0.75, 2.0, 1e-12);
        assert_relative_eq!(v, 3.562_937_559_699_955, max_relative = 1e-7);
    }

    #[test]
    fn gauss8_is_exact_on_degree_seven() {
        let f = |x: f64| x.powi(7) + x.powi(4) + 1.0;
        let exact = 2.0f64 / 5.0 + 2.0;
        assert_relative_eq!(gauss8(&f, -1.0, 1.0), exact, epsilon = 1e-13);
    }
}
