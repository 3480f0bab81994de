//! One line per acceptance criterion; exits nonzero if any fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeMap;
use std::fs;
use std::process::ExitCode;

use deficit::census::{
    entropy_curve, enumerate_with, estimate_c, histogram, spearman, write_signatures, Census, CensusConfig,
    DegeneracyHistogram, ManifoldFilter,
};
use deficit::exec::Execution;
use deficit::isosig::from_signature;
use deficit::nearly_flat::{
    cosmological_constant, expected_action_asymptotic, expected_action_exact, geometric_lemma_lhs,
};
use deficit::recognition::SphereRecognizer;
use deficit::regge::{
    action_gap, dihedral_angle, flat_degree, normalized_action, regge_action_direct, regge_action_mu,
    tetrahedron_volume,
};
use deficit::spectrum::{bracket, n1_window, spectrum_levels, N1Window, DEFAULT_GAMMA_STAR};
use deficit::{Rational, ValidityMode};
use deficit_verify::{rel_close, Check, Recorder};

struct Censuses {
    recognizer: SphereRecognizer,
    cache: BTreeMap<(usize, ValidityMode), Census>,
}

impl Censuses {
    fn get(&mut self, k: usize, mode: ValidityMode) -> &Census {
        let recognizer = &self.recognizer;
        self.cache.entry((k, mode)).or_insert_with(|| {
            let config = CensusConfig::new(k, mode).exec(Execution::default());
            enumerate_with(&config, Some(recognizer)).expect("size within ceiling")
        })
    }
}

fn constants() -> Check {
    let mut r = Recorder::new(1, "constants");
    let (mu_star, theta) = (flat_degree(), dihedral_angle());
    r.expect((5.10..=5.11).contains(&mu_star), format!("mu* = {mu_star:.6} in [5.10, 5.11]"));
    r.expect((1.2309..=1.2310).contains(&theta), format!("theta3 = {theta:.6} in [1.2309, 1.2310]"));
    let a6 = normalized_action(Rational::from_integer(6), 1.0).unwrap();
    let a45 = normalized_action(Rational::new(9, 2), 1.0).unwrap();
    r.expect((a6 + 0.186).abs() <= 0.005, format!("A_6 = {a6:.5}, expected -0.186 +- 0.005"));
    r.expect((a45 - 0.167).abs() <= 0.005, format!("A_4.5 = {a45:.5}, expected +0.167 +- 0.005"));
    r.finish()
}

fn action_equivalence(c: &mut Censuses) -> Check {
    let mut r = Recorder::new(2, "direct action equals mu form on the strict census, K <= 5");
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for k in 1..=5 {
        for m in c.get(k, ValidityMode::Strict).members.clone() {
            let t = from_signature(&m.signature, ValidityMode::Strict).unwrap();
            let mu = Rational::new(6 * k as u64, m.f_vector.n1 as u64);
            for l in [0.5, 1.0, 2.0] {
                let direct = regge_action_direct(&t, l).unwrap().total;
                let formula = regge_action_mu(k as u64, mu, l).unwrap();
                worst = worst.max((direct - formula).abs() / direct.abs().max(formula.abs()));
                checked += 1;
            }
        }
    }
    r.expect(checked > 0 && worst <= 1e-12, format!("{checked} evaluations, worst relative difference {worst:.2e} <= 1e-12"));
    r.finish()
}

fn gap_law() -> Check {
    let mut r = Recorder::new(3, "gap law");
    let mut worst_gap: f64 = 0.0;
    let mut worst_volume: f64 = 0.0;
    let mut pairs = 0;
    for k in [10u64, 100, 1000] {
        for l in [0.5, 1.0, 2.0] {
            let expected = 3.0 * 2f64.sqrt() / 4.0 / (l * l * k as f64);
            let gap = action_gap(k, l);
            worst_gap = worst_gap.max((gap - expected).abs() / expected);
            let levels = spectrum_levels(k, l, DEFAULT_GAMMA_STAR);
            for w in levels.windows(2) {
                let d = w[1].action_per_volume - w[0].action_per_volume;
                worst_gap = worst_gap.max((d - expected).abs() / expected);
                pairs += 1;
            }
            let vol = tetrahedron_volume(l) * k as f64;
            worst_volume = worst_volume.max((gap * 8.0 * vol / l - 1.0).abs());
        }
    }
    r.expect(pairs > 0 && worst_gap <= 1e-12, format!("{pairs} adjacent level pairs, worst relative gap error {worst_gap:.2e} <= 1e-12"));
    r.expect(worst_volume <= 1e-12, format!("gap * 8 Vol / l = 1 within {worst_volume:.2e}"));
    r.note("K = 10 has an empty window and contributes no pairs");
    r.finish()
}

fn walkup_window() -> Check {
    let mut r = Recorder::new(4, "Walkup window and bracketing");
    let w5 = n1_window(5, -10);
    r.expect(w5 == N1Window { min: 10, max: 10 }, format!("K=5: {w5}"));
    let w100 = n1_window(100, -10);
    r.expect(w100 == N1Window { min: 116, max: 136 }, format!("K=100: {w100}"));
    let w10 = n1_window(10, -10);
    r.expect(w10.is_empty(), format!("K=10: {w10}"));
    match bracket(0.0, 100, 1.0, DEFAULT_GAMMA_STAR) {
        Ok(b) => {
            let (lo, hi) = (b.lower.action_per_volume, b.upper.action_per_volume);
            r.expect(
                (b.lower.n1, b.upper.n1) == (117, 118) && lo < 0.0 && hi > 0.0,
                format!("bracket(0, 100): n1 {} at {lo:.5}, n1 {} at {hi:.5}", b.lower.n1, b.upper.n1),
            );
        }
        Err(e) => r.expect(false, format!("bracket(0, 100) failed: {e}")),
    }
    r.finish()
}

fn classes(c: &Census) -> oracle::Classes {
    histogram(c).counts.into_iter().map(|(n1, n)| (n1 as usize, n)).collect()
}

fn oracle_equivalence(c: &mut Censuses) -> Check {
    let mut r = Recorder::new(5, "census matches brute force");
    for k in 1..=3 {
        let census = c.get(k, ValidityMode::Lenient);
        let (got, unknown) = (classes(census), census.unknown.len());
        let expected = oracle::lenient_classes(k, true);
        r.expect(got == expected && unknown == 0, format!("lenient K={k}: {got:?} vs oracle {expected:?}, {unknown} unknown"));
    }
    for k in 1..=5 {
        let census = c.get(k, ValidityMode::Strict);
        let (got, unknown) = (classes(census), census.unknown.len());
        let expected = oracle::strict_classes(k);
        r.expect(got == expected && unknown == 0, format!("strict K={k}: {got:?} vs oracle {expected:?}, {unknown} unknown"));
    }
    r.finish()
}

fn trend_of(h: &DegeneracyHistogram) -> Option<f64> {
    let pts = entropy_curve(std::slice::from_ref(h));
    let xs: Vec<f64> = pts.iter().map(|p| p.action_per_volume).collect();
    let ys: Vec<f64> = pts.iter().map(|p| p.entropy_per_volume).collect();
    spearman(&xs, &ys)
}

fn entropy_trend(c: &mut Censuses) -> Check {
    let mut r = Recorder::new(6, "entropy falls with action on the largest strict census");
    let hists: Vec<DegeneracyHistogram> = (1..=6).map(|k| histogram(c.get(k, ValidityMode::Strict))).collect();
    let complete: Vec<&DegeneracyHistogram> = hists.iter().filter(|h| h.unknown == 0).collect();
    for h in &complete {
        r.note(format!("strict K={}: {:?}", h.k, h.counts));
    }
    let k_star = complete.iter().map(|h| h.k).max().unwrap_or(0);
    let largest = complete.iter().rev().find(|h| h.total() > 0);
    match largest {
        Some(h) => {
            let rho = trend_of(h);
            r.note(format!("largest completed size K* = {k_star}; largest nonempty K = {}", h.k));
            r.expect(
                rho.is_some_and(|x| x < 0.0),
                match rho {
                    Some(x) => format!("Spearman(S, A) at K={} = {x:.4} < 0", h.k),
                    None => format!("Spearman(S, A) at K={} undefined: {} level(s), each with entropy 0", h.k, h.counts.len()),
                },
            );
        }
        None => r.expect(false, "no nonempty strict census"),
    }
    let mut ratios = 0;
    for h in &complete {
        if let Ok(est) = estimate_c(h, 0.0) {
            if est.count_plus >= 10 && est.count_minus >= 10 {
                ratios += 1;
                r.expect(est.ratio < 1.0, format!("C estimate K={}: {:.4} < 1", h.k, est.ratio));
            }
        }
    }
    r.note(format!("{ratios} strict C(0) estimates with both counts >= 10"));
    for k in 4..=5 {
        let h = histogram(c.get(k, ValidityMode::Lenient));
        let rho = trend_of(&h).map_or("undefined".to_owned(), |x| format!("{x:.4}"));
        r.note(format!("lenient K={k} (not the criterion): Spearman(S, A) = {rho}, counts {:?}", h.counts));
    }
    r.finish()
}

fn geometric_series() -> Check {
    let mut r = Recorder::new(7, "geometric-series and expected-action asymptotics");
    for c in [0.5, 0.9, 0.99] {
        for n in [1_000u64, 10_000, 100_000] {
            if (n as f64) * (1.0 - c) < 100.0 {
                continue;
            }
            let exact = geometric_lemma_lhs(c, n).unwrap();
            let approx = -(n as f64) / (1.0 - c);
            let delta = 1.0 / (n as f64 * n as f64);
            let e = expected_action_exact(n, delta, c).unwrap();
            let a = expected_action_asymptotic(n as f64, delta);
            let (d1, d2) = ((exact - approx).abs() / approx.abs(), (e - a).abs() / a.abs());
            r.expect(d1 <= 0.05 && d2 <= 0.05, format!("r=C={c}, N={n}: series off by {:.3}%, expectation off by {:.3}%", 100.0 * d1, 100.0 * d2));
        }
    }
    r.finish()
}

fn cosmology() -> Check {
    let mut r = Recorder::new(8, "cosmological pipeline");
    let res = cosmological_constant(1.6e-35, 3.5e80).unwrap();
    let closed = res.volume_natural.powf(-2.0 / 3.0) / 16.0;
    r.expect(rel_close(res.lambda, closed, 1e-12), format!("Lambda = {:.6e} = V^(-2/3)/16 = {closed:.6e}", res.lambda));
    r.expect((res.lambda_log10 + 124.5).abs() <= 0.1, format!("log10 Lambda = {:.4}, expected -124.5 +- 0.1", res.lambda_log10));
    let gap = res.lambda_log10 + 123.0;
    r.expect(gap.abs() <= 2.0, format!("log10 Lambda - (-123) = {gap:.2}, within two orders of 1e-123; the difference is left as computed"));
    let mut worst: f64 = 0.0;
    for a in [1e-3, 0.5, 2.0, 1e3] {
        let scaled = cosmological_constant(1.6e-35 * a, 3.5e80 * a * a * a).unwrap();
        worst = worst.max((scaled.alpha_g - res.alpha_g).abs() / res.alpha_g);
    }
    r.expect(worst <= 1e-12, format!("alpha_G = {:.15} invariant under unit rescaling within {worst:.2e}", res.alpha_g));
    r.finish()
}

fn determinism(c: &mut Censuses) -> Check {
    let mut r = Recorder::new(9, "census files identical for 1 and 4 workers");
    let dir = tempfile::tempdir().unwrap();
    let recognizer = &c.recognizer;
    let cases = (1..=4).map(|k| (k, ValidityMode::Lenient)).chain((1..=6).map(|k| (k, ValidityMode::Strict)));
    for (k, mode) in cases {
        let files: Vec<Vec<u8>> = [1, 4]
            .iter()
            .map(|&jobs| {
                let config = CensusConfig::new(k, mode).filter(ManifoldFilter::Sphere).exec(Execution::from_jobs(jobs));
                let census = enumerate_with(&config, Some(recognizer)).unwrap();
                let path = dir.path().join(format!("k{k}-{mode}-j{jobs}.sig"));
                write_signatures(&path, &census).unwrap();
                fs::read(&path).unwrap()
            })
            .collect();
        r.expect(files[0] == files[1], format!("{mode} K={k}: {} bytes", files[0].len()));
    }
    r.finish()
}

fn main() -> ExitCode {
    let mut censuses = Censuses {
        recognizer: SphereRecognizer::default(),
        cache: BTreeMap::new(),
    };
    let checks = [
        constants(),
        action_equivalence(&mut censuses),
        gap_law(),
        walkup_window(),
        oracle_equivalence(&mut censuses),
        entropy_trend(&mut censuses),
        geometric_series(),
        cosmology(),
        determinism(&mut censuses),
    ];
    println!();
    for c in &checks {
        println!("{c}");
    }
    let failed: Vec<u32> = checks.iter().filter(|c| !c.passed).map(|c| c.id).collect();
    println!();
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", checks.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} of {} criteria passed; failed: {failed:?}", checks.len() - failed.len(), checks.len());
        ExitCode::FAILURE
    }
}
