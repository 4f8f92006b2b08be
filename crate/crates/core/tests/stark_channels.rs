use stark_lft::coulomb::{norm_nn1, QuantumContext};
use stark_lft::specfun::log_gamma_signed;
use stark_lft::stark::*;

fn fig1() -> QuantumContext {
    QuantumContext::from_delta(10.5, 1, 1.3).unwrap()
}

#[test]
fn field_from_delta() {
    let c = fig1();
    assert!((c.field - 6.6845e-6).abs() < 5e-10);
    assert!((c.field - 1.3 / (16.0 * 10.5f64.powi(4))).abs() < 1e-20);
}

#[test]
fn zero_field_limit() {
    let c = QuantumContext::from_field(10.5, 1, 1e-12).unwrap();
    let t = solve_channels(&c, 10).unwrap();
    assert!((t.channels[0].beta.to_f64() - 1.0 / 10.5).abs() < 1e-6);
    for ch in &t.channels {
        assert!((ch.nu_f64() - (ch.k - 1) as f64).abs() <= 1e-6, "k={}", ch.k);
        let want = norm_nn1(&c, ch.k - 1);
        assert!((ch.c_f64() - want).abs() <= 1e-4 * want);
    }
}

#[test]
fn nu_plus_mu_and_monotone() {
    let c = fig1();
    let t = solve_channels(&c, 40).unwrap();
    assert_eq!(t.len(), 40);
    let mut prev = -1.0;
    for ch in &t.channels {
        let s = ch.nu + ch.mu;
        assert!((s.to_f64() - (c.n - c.m as f64 - 1.0)).abs() < 1e-12);
        let nb = ch.beta * c.n - (c.m as f64 + 1.0) / 2.0;
        assert!((nb - ch.nu).abs().to_f64() < 1e-12);
        assert!(ch.nu_f64() > prev);
        prev = ch.nu_f64();
    }
}

#[test]
fn first_order_stark_shift() {
    // β_j ≈ (j + (m+1)/2)/n + (F n²/4) ⟨X²⟩_j, ⟨X²⟩_j = (2j+m+1)² + (j+1)(j+m+1) + j(j+m)
    let n = 10.5;
    for m in [0usize, 1, 2] {
        for delta in [1e-3, 1e-2] {
            let c = QuantumContext::from_delta(n, m, delta).unwrap();
            let t = solve_channels(&c, 8).unwrap();
            for ch in &t.channels {
                let j = (ch.k - 1) as f64;
                let mf = m as f64;
                let x2 = (2.0 * j + mf + 1.0).powi(2) + (j + 1.0) * (j + mf + 1.0) + j * (j + mf);
                let shift1 = c.field * n * n / 4.0 * x2;
                let shift = ch.beta.to_f64() - (j + (mf + 1.0) / 2.0) / n;
                // second order is negative and O(shift1 · δ · poly(j))
                let rel = (shift - shift1) / shift1;
                assert!(rel < 0.0 && rel.abs() < 10.0 * delta * (j + 1.0), "m={m} δ={delta} k={}: {rel}", ch.k);
            }
        }
    }
}

#[test]
fn node_counts() {
    let c = fig1();
    let t = solve_channels(&c, 20).unwrap();
    for k in 1..=20 {
        let end = 1.05 * t.turning_point(k);
        assert_eq!(t.node_count(k, end, 4000).unwrap(), k - 1, "k={k}");
    }
}

#[test]
fn unit_normalization_by_quadrature() {
    let c = fig1();
    let t = solve_channels(&c, 6).unwrap();
    for k in 1..=6 {
        let end = 4.0 * t.turning_point(k) + 20.0 * c.n;
        // Simpson in s = √ξ: ∫ χ² dξ = ∫ 2s χ(s²)² ds
        let n = 8000;
        let h = end.sqrt() / n as f64;
        let f = |s: f64| 2.0 * s * t.chi(k, s * s).unwrap().powi(2);
        let mut sum = f(0.0) + f(n as f64 * h);
        for i in 1..n {
            sum += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        let norm = sum * h / 3.0;
        assert!((norm - 1.0).abs() < 1e-6, "k={k}: {norm}");
    }
}

#[test]
fn basis_agrees_with_shooting() {
    let c = fig1();
    let t = solve_channels(&c, 8).unwrap();
    for ch in &t.channels {
        let s = shoot_channel(&c, ch.k, 20000).unwrap();
        assert!((s.nu - ch.nu_f64()).abs() < 1e-9, "k={}", ch.k);
        assert!((s.c - ch.c_f64()).abs() < 1e-7 * ch.c_f64(), "k={}", ch.k);
    }
}

#[test]
fn window_fit_matches_and_is_flat() {
    for n in [10.5, 28.5] {
        let c = QuantumContext::from_delta(n, 1, 1.3).unwrap();
        let t = solve_channels(&c, 10).unwrap();
        let w = default_window(&c);
        for k in 1..=10 {
            let fit = channel_match_c(&t, k, w).unwrap();
            assert!(fit.residual < 1e-4, "n={n} k={k}: {}", fit.residual);
            let cc = t.channels[k - 1].c_f64();
            assert!((fit.c - cc).abs() < 1e-4 * cc);
        }
    }
}

#[test]
fn density_of_channels() {
    // dk/dν ≈ N²(ν)/c_k², N²(ν) = Γ(ν+m+1)/(Γ(ν+1) n (m!)²)
    let c = fig1();
    let t = solve_channels(&c, 40).unwrap();
    for k in [25usize, 30, 35] {
        let nu = t.channels[k - 1].nu_f64();
        let dk = 2.0 / (t.channels[k].nu_f64() - t.channels[k - 2].nu_f64());
        let lg = log_gamma_signed(nu + 2.0).unwrap().log_abs - log_gamma_signed(nu + 1.0).unwrap().log_abs;
        let nsq = lg.exp() / c.n;
        let want = nsq / t.channels[k - 1].c_f64().powi(2);
        assert!((dk / want - 1.0).abs() < 0.02, "k={k}: {dk} vs {want}");
    }
}
