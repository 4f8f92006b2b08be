use num_rational::Ratio;
use stark_lft::coulomb::{norm_nn1, wronskian_w, QuantumContext};
use stark_lft::lft::*;
use stark_lft::specfun::{digamma, log_gamma_signed, Dd};

fn ctx(n: f64, m: usize) -> QuantumContext {
    QuantumContext::from_field(n, m, 0.0).unwrap()
}

type Q = Ratio<i128>;

fn q(num: i128, den: i128) -> Q {
    Ratio::new(num, den)
}

fn int(v: i128) -> Q {
    Ratio::from_integer(v)
}

fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

fn fact(k: i128) -> Q {
    int((1..=k).product::<i128>().max(1))
}

/// Γ(1+x)/Γ(1+x−k) = x(x−1)…(x−k+1) for rational x.
fn falling_q(x: Q, k: i128) -> Q {
    (0..k).map(|j| x - j).product()
}

/// The A p-sum in exact rationals; ν integer or half-integer.
fn a_rational(nu: Q, mu: Q, l: i128, m: i128) -> Q {
    let mut s = int(0);
    for p in 0..=(l - m) {
        let sign = if (p + m) % 2 == 0 { 1 } else { -1 };
        let num = int(sign * (1i128 << l)) * fact(l - m) * fact(l) * fact(m) * fact(m);
        let ratio = falling_q(nu, p) * falling_q(mu, l - m - p);
        let den = fact(2 * l) * fact(l - p) * fact(l - m - p) * fact(m + p) * fact(p);
        s += num * ratio / den;
    }
    s
}

#[test]
fn a_matches_exact_rational_at_integer_nu() {
    let c = ctx(10.5, 1);
    let want = a_rational(int(2), q(13, 2), 4, 1);
    let got = a_matrix(&c, 2.0, 4);
    assert!((got - to_f64(want)).abs() <= 1e-14 * to_f64(want).abs(), "{got} vs {want:?}");
    for (nu, l) in [(0, 1), (3, 3), (5, 6), (7, 2)] {
        let mu = q(21, 2) - (nu + 2);
        let want = to_f64(a_rational(int(nu), mu, l, 1));
        let got = a_matrix(&c, nu as f64, l as usize);
        assert!((got - want).abs() <= 1e-14 * want.abs().max(1.0), "ν={nu} l={l}: {got} vs {want}");
    }
}

#[test]
fn a_at_l_equal_m() {
    // (−1)^m 2^m m!/(2m)!·(m!)²/(m!)² reduces to (−1)^m 2^m (m!)³ /((2m)! m!)… evaluated directly
    for m in 0..4usize {
        let c = ctx(12.5, m);
        let want = to_f64(a_rational(int(3), q(17, 2) - m as i128, m as i128, m as i128));
        assert!((a_matrix(&c, 3.0, m) - want).abs() < 1e-14 * want.abs());
    }
    assert_eq!(a_matrix(&ctx(10.5, 0), 2.37, 0), 1.0);
    assert_eq!(a_matrix(&ctx(10.5, 1), 2.37, 1), -1.0);
}

#[test]
fn a_approaches_large_nu_form() {
    // the relative deviation is O((l−m+1)²/ν)
    let c = ctx(10.5, 1);
    for l in 1..=6usize {
        let s = (l as f64).powi(2);
        let dev = |nu: f64| (a_matrix(&c, nu, l) / a_matrix_asymptotic(nu, l, 1) - 1.0).abs();
        let nu = 100.0 * s;
        assert!(dev(nu) <= 0.02, "l={l}: deviation {}", dev(nu));
        if l > 1 {
            let shrink = dev(10.0 * nu) / dev(nu);
            assert!((0.05..0.15).contains(&shrink), "l={l}: shrink {shrink}");
        } else {
            assert!(dev(nu) < 1e-14);
        }
        assert_eq!(a_matrix_asymptotic(nu, l, 1).signum(), if l % 2 == 0 { 1.0 } else { -1.0 });
    }
    assert_eq!(a_matrix_asymptotic(3.0, 0, 0), 1.0);
}

/// Ǎ term by term from signed log-Γ values, summed in reverse p order.
fn a_breve_log_domain(n: f64, m: usize, nu: f64, l: usize) -> f64 {
    let mu = n - nu - m as f64 - 1.0;
    let lg = |x: f64| log_gamma_signed(x).unwrap();
    let lf = |k: usize| lg(k as f64 + 1.0).log_abs;
    let mut s = 0.0;
    for p in (0..=(l - m)).rev() {
        let d1 = lg(1.0 + nu - p as f64);
        let d2 = lg(1.0 + mu + m as f64 - l as f64 + p as f64);
        let n1 = lg(1.0 + nu);
        let n2 = lg(1.0 + mu + m as f64);
        let sgn = if (p + m) % 2 == 0 { 1.0 } else { -1.0 } * (d1.sign * d2.sign * n1.sign * n2.sign) as f64;
        let log = l as f64 * 2f64.ln() + lf(l - m) + lf(l) + n1.log_abs + n2.log_abs
            - lf(2 * l) - d1.log_abs - d2.log_abs - lf(l - p) - lf(l - m - p) - lf(m + p) - lf(p);
        let s_ = (l - m - p) as f64;
        let psi = digamma(-mu + s_).unwrap() - digamma(1.0 + m as f64 + s_).unwrap() - digamma(1.0 + s_).unwrap();
        s += sgn * log.exp() * psi;
    }
    s
}

#[test]
fn a_breve_matches_log_domain_recomputation() {
    let c = ctx(10.5, 1);
    for nu in [0.0113, 1.0445, 4.2636, 8.803] {
        for l in [1usize, 3, 5] {
            let got = a_breve_matrix(&c, nu, l).unwrap();
            let want = a_breve_log_domain(10.5, 1, nu, l);
            assert!((got - want).abs() <= 1e-11 * want.abs().max(1.0), "ν={nu} l={l}: {got} vs {want}");
        }
    }
}

#[test]
fn a_breve_single_term() {
    // l = m = 0, μ = −1/2: ψ(1/2) − 2ψ(1)
    let c = ctx(10.5, 0);
    let got = a_breve_matrix(&c, 10.0, 0).unwrap();
    let want = digamma(0.5).unwrap() - 2.0 * digamma(1.0).unwrap();
    assert!((got - want).abs() < 1e-14);
}

#[test]
fn a_breve_rejects_integer_mu() {
    // ν = 6.5 gives μ = 2 at n = 10.5, m = 1
    assert!(a_breve_matrix(&ctx(10.5, 1), 6.5, 4).is_err());
}

#[test]
fn omega_against_printed_form() {
    let n = 10.5;
    let pi = std::f64::consts::PI;
    for (m, mu) in [(1usize, 7.3), (1, -3.4), (2, 0.37), (0, 2.9), (3, -6.6)] {
        let c = ctx(n, m);
        let lg1 = log_gamma_signed(1.0 + m as f64 + mu).unwrap();
        let lg0 = log_gamma_signed(1.0 + mu).unwrap();
        let ratio = (lg1.log_abs - lg0.log_abs).exp() * (lg1.sign * lg0.sign) as f64;
        let br = 0.5 * (digamma(1.0 + m as f64 + mu).unwrap() + digamma(1.0 + mu).unwrap() - 2.0 * n.ln())
            + pi / (pi * mu).tan();
        let want = ratio * br;
        let got = omega(&c, mu).unwrap();
        assert!((got - want).abs() < 1e-12 * want.abs().max(1.0), "m={m} μ={mu}: {got} vs {want}");
    }
    assert!(omega(&ctx(n, 1), 2.0).is_err());
    assert!(omega(&ctx(n, 1), 2.0 + 1e-7).unwrap().abs() > 1e6);
}

#[test]
fn b_equals_product_of_factors() {
    let c = ctx(10.5, 1);
    for l in [1usize, 3, 5] {
        let w = wronskian_w(&c, l).unwrap().to_f64();
        let nlm = stark_lft::coulomb::norm_nlm(l, 1);
        let red = b_matrix_reduced_table(&c, l, 9).unwrap();
        for n1 in 0..9usize {
            let n2 = c.partner(n1 as f64);
            let g = stark_lft::specfun::gamma(-n2).unwrap();
            let a = a_matrix(&c, n1 as f64, l);
            let want = w / nlm * a * norm_nn1(&c, n1).powi(2) * g;
            let got = b_matrix(&c, l, n1).unwrap();
            assert!((got.to_f64() - want).abs() <= 1e-12 * want.abs(), "l={l} n1={n1}");
            assert_eq!(got.sign as f64, (w * a * g).signum());
            assert!((red[n1] * g - want).abs() <= 1e-12 * want.abs());
        }
    }
}

#[test]
fn psum_coefficients_in_dd() {
    let coef = PSumCoefficients::new(4, 1);
    let nu = Dd::new(2.0);
    let mu = Dd::new(6.5);
    let want = to_f64(a_rational(int(2), q(13, 2), 4, 1));
    assert!((coef.a(nu, mu).to_f64() - want).abs() < 1e-14 * want.abs());
}
