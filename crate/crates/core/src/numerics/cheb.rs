//! Chebyshev-coefficient kernels: interpolation, Clenshaw evaluation, and the
//! exact coefficient-level calculus (derivative, antiderivative, products)
//! that the differential and inverse operators are built on.

/// Evaluate sum c_k T_k(x) by Clenshaw recursion.
pub fn clenshaw(coeffs: &[f64], x: f64) -> f64 {
    if coeffs.is_empty() {
        return 0.0;
    }
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = 2.0 * x * b1 - b2 + c;
        b2 = b1;
        b1 = b0;
    }
    x * b1 - b2 + coeffs[0]
}

/// Chebyshev interpolation of `f` at the N+1 extrema x_j = cos(pi j / N).
/// Exact (up to roundoff) for polynomials of degree <= N.
pub fn interpolate_extrema(mut f: impl FnMut(f64) -> f64, degree: usize) -> Vec<f64> {
    let n = degree;
    if n == 0 {
        return vec![f(1.0)];
    }
    let nodes: Vec<f64> = (0..=n)
        .map(|j| (std::f64::consts::PI * j as f64 / n as f64).cos())
        .collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let mut coeffs = vec![0.0; n + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let mut acc = 0.5 * (values[0] + values[n] * if k % 2 == 0 { 1.0 } else { -1.0 });
        for (j, &v) in values.iter().enumerate().take(n).skip(1) {
            acc += v * (std::f64::consts::PI * (j * k) as f64 / n as f64).cos();
        }
        *c = 2.0 * acc / n as f64;
    }
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    coeffs
}

/// Chebyshev interpolation at the N+1 first-kind roots (all interior).
/// Used when the function cannot be evaluated at x = +-1.
pub fn interpolate_roots(mut f: impl FnMut(f64) -> f64, degree: usize) -> Vec<f64> {
    let m = degree + 1;
    let nodes: Vec<f64> = (0..m)
        .map(|j| (std::f64::consts::PI * (2.0 * j as f64 + 1.0) / (2.0 * m as f64)).cos())
        .collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let mut coeffs = vec![0.0; m];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let acc: f64 = values
            .iter()
            .enumerate()
            .map(|(j, &v)| {
                v * (std::f64::consts::PI * k as f64 * (2.0 * j as f64 + 1.0)
                    / (2.0 * m as f64))
                    .cos()
            })
            .sum();
        *c = 2.0 * acc / m as f64;
    }
    coeffs[0] *= 0.5;
    coeffs
}

/// Coefficients of d/dx of sum c_k T_k.
pub fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n - 1];
    let mut next = 0.0; // d_{k+1}
    let mut next2 = 0.0; // d_{k+2}
    for k in (0..n - 1).rev() {
        let dk = next2 + 2.0 * (k as f64 + 1.0) * coeffs[k + 1];
        next2 = next;
        next = dk;
        d[k] = dk;
    }
    d[0] *= 0.5;
    d
}

/// Coefficients of an antiderivative of sum c_k T_k, normalized so the
/// constant term makes the result vanish at x = 0.
pub fn antiderivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n + 1];
    for k in 1..=n {
        let prev = coeffs[k - 1];
        let next = if k + 1 < n { coeffs[k + 1] } else { 0.0 };
        let scale = if k == 1 { 1.0 } else { 0.5 };
        out[k] = (scale * prev - 0.5 * next) / k as f64;
    }
    let at_zero = clenshaw(&out, 0.0);
    out[0] -= at_zero;
    out
}

/// Product of two Chebyshev series: T_m T_n = (T_{m+n} + T_{|m-n|}) / 2.
pub fn product(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return vec![0.0];
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (m, &am) in a.iter().enumerate() {
        if am == 0.0 {
            continue;
        }
        for (n, &bn) in b.iter().enumerate() {
            let v = 0.5 * am * bn;
            out[m + n] += v;
            out[m.abs_diff(n)] += v;
        }
    }
    out
}

/// Multiply a Chebyshev series by x.
pub fn mul_x(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let mut out = vec![0.0; n + 1];
    for (k, &c) in coeffs.iter().enumerate() {
        if k == 0 {
            out[1] += c;
        } else {
            out[k + 1] += 0.5 * c;
            out[k - 1] += 0.5 * c;
        }
    }
    out
}

/// Drop trailing coefficients below `tol` in absolute value (always keeps c_0).
pub fn trim(mut coeffs: Vec<f64>, tol: f64) -> Vec<f64> {
    while coeffs.len() > 1 && coeffs.last().map_or(false, |c| c.abs() <= tol) {
        coeffs.pop();
    }
    coeffs
}

/// Convert monomial coefficients (c_0 + c_1 x + ...) to Chebyshev coefficients.
pub fn from_monomials(mono: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0];
    for &c in mono.iter().rev() {
        out = mul_x(&out);
        out[0] += c;
    }
    out
}

/// Definite integral over [-1,1] of sum c_k T_k, exactly on coefficients:
/// int T_k = 2/(1-k^2) for even k, 0 for odd k.
pub fn integral(coeffs: &[f64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .step_by(2)
        .map(|(k, &c)| 2.0 * c / (1.0 - (k * k) as f64))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn cube_has_known_coefficients() {
        // x^3 = (3 T_1 + T_3)/4
        let c = interpolate_extrema(|x| x * x * x, 3);
        let expected = [0.0, 0.75, 0.0, 0.25];
        for (a, b) in c.iter().zip(expected) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn constant_interpolates_to_unit_head() {
        let c = interpolate_extrema(|_| 1.0, 7);
        assert_abs_diff_eq!(c[0], 1.0, epsilon = 1e-14);
        for &v in &c[1..] {
            assert_abs_diff_eq!(v, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn exp_roundtrip_below_1e12() {
        let c = interpolate_extrema(f64::exp, 24);
        for i in 0..=100 {
            let x = -1.0 + 0.02 * i as f64;
            assert!((clenshaw(&c, x) - x.exp()).abs() < 1e-12);
        }
    }

    #[test]
    fn roots_interpolation_is_exact_on_polynomials() {
        let c = from_monomials(&[1.0, -2.0, 0.0, 4.0, 0.5]);
        let ci = interpolate_roots(|x| clenshaw(&c, x), 4);
        for (a, b) in ci.iter().zip(&c) {
            assert_abs_diff_eq!(*a, *b, epsilon = 1e-13);
        }
    }

    #[test]
    fn derivative_of_cube() {
        let c = from_monomials(&[0.0, 0.0, 0.0, 1.0]);
        let d = derivative(&c);
        for x in [-0.9, -0.3, 0.0, 0.5, 1.0] {
            assert_abs_diff_eq!(clenshaw(&d, x), 3.0 * x * x, epsilon = 1e-13);
        }
    }

    #[test]
    fn antiderivative_inverts_derivative_up_to_constant() {
        let c = from_monomials(&[0.3, -1.0, 2.0, 0.25, -0.7]);
        let a = antiderivative(&derivative(&c));
        let shift = clenshaw(&c, 0.0);
        for x in [-0.95, -0.2, 0.1, 0.8] {
            assert_abs_diff_eq!(clenshaw(&a, x) + shift, clenshaw(&c, x), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(clenshaw(&a, 0.0), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn product_matches_pointwise() {
        let a = from_monomials(&[1.0, 2.0, -1.0]);
        let b = from_monomials(&[0.5, 0.0, 3.0, 1.0]);
        let p = product(&a, &b);
        for x in [-0.8, -0.1, 0.33, 0.99] {
            assert_abs_diff_eq!(
                clenshaw(&p, x),
                clenshaw(&a, x) * clenshaw(&b, x),
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn integral_matches_hand_values() {
        // int x^2 = 2/3; int (1-x^2)^2 = 16/15
        assert_abs_diff_eq!(
            integral(&from_monomials(&[0.0, 0.0, 1.0])),
            2.0 / 3.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            integral(&from_monomials(&[1.0, 0.0, -2.0, 0.0, 1.0])),
            16.0 / 15.0,
            epsilon = 1e-14
        );
    }
}
