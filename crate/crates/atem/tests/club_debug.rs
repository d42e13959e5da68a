use atem::autodiff::Tape;
use atem::network::{club_loglik, club_mi_upper, init_club_params, NetConfig};
use atem::training::{AdamW, AdamWConfig};
use ndarray::{ArrayD, IxDyn};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn club_fit_diagnostics() {
    let d_z = 4;
    let rho = 0.0;
    let net_cfg = NetConfig {
        d_model: 4,
        n_blocks_encoder: 1,
        n_blocks_decoder: 1,
        n_heads: 1,
        d_ff: 4,
        d_z,
        n_gates: 2,
        n_layers_out: 2,
    };
    let mut club = init_club_params(&net_cfg, 6);
    let mut rng = atem::modelgen::rng_for_stream(6, 7);
    let mut draw = |n: usize| -> (ArrayD<f64>, ArrayD<f64>) {
        let mut zs = ArrayD::zeros(IxDyn(&[n, d_z]));
        let mut zn = ArrayD::zeros(IxDyn(&[n, d_z]));
        for i in 0..n {
            for j in 0..d_z {
                let a: f64 = rng.sample(rand_distr::StandardNormal);
                let e: f64 = rng.sample(rand_distr::StandardNormal);
                zs[[i, j]] = a;
                zn[[i, j]] = rho * a + (1.0 - rho * rho).sqrt() * e;
            }
        }
        (zs, zn)
    };
    let (zs_fit, zn_fit) = draw(1024);
    let mut opt = AdamW::new(AdamWConfig {
        lr: 1e-2,
        weight_decay: 0.0,
        ..AdamWConfig::default()
    })
    .unwrap();
    for step in 0..2000 {
        let tape = Tape::new();
        let p = club.bind(&tape, true).unwrap();
        let zs = tape.constant(zs_fit.clone()).unwrap();
        let zn = tape.constant(zn_fit.clone()).unwrap();
        let nll = club_loglik(&p, zs, zn).unwrap().neg();
        if step % 200 == 0 {
            println!("step {step}: nll {}", nll.scalar_value());
        }
        let mut grads = tape.backward(nll).unwrap();
        let gmap: std::collections::BTreeMap<String, ArrayD<f64>> = p
            .iter()
            .filter_map(|(name, var)| grads.take(*var).map(|g| (name.clone(), g)))
            .collect();
        if step == 0 {
            for (k, g) in &gmap {
                let gn = g.iter().map(|v| v * v).sum::<f64>().sqrt();
                println!("  grad {k}: norm {gn:.3e}");
            }
        }
        opt.step(&mut club, &gmap).unwrap();
    }
    // Final NLL + mean/extremes of predicted logvar on the fit set.
    let tape = Tape::new();
    let p = club.bind(&tape, false).unwrap();
    let zs = tape.constant(zs_fit.clone()).unwrap();
    let zn = tape.constant(zn_fit.clone()).unwrap();
    println!("final nll {}", club_loglik(&p, zs, zn).unwrap().neg().scalar_value());

    let (zs_e, zn_e) = draw(4096);
    let tape2 = Tape::new();
    let p2 = club.bind(&tape2, false).unwrap();
    let zs2 = tape2.constant(zs_e.clone()).unwrap();
    let zn2 = tape2.constant(zn_e.clone()).unwrap();
    let est = club_mi_upper(&p2, zs2, zn2).unwrap().scalar_value();
    println!("estimate on fresh batch: {est}");

    // Naive double loop on a subsample of the same eval data with the same
    // fitted parameters.
    let bs = 256;
    let mut matched = 0.0;
    let mut cross = 0.0;
    let tape_n = Tape::new();
    let pn = club.bind(&tape_n, false).unwrap();
    for i in 0..bs {
        let zsi = tape_n
            .constant(zs_e.slice(ndarray::s![i..i + 1, ..]).to_owned().into_dyn())
            .unwrap();
        for j in 0..bs {
            let znj = tape_n
                .constant(zn_e.slice(ndarray::s![j..j + 1, ..]).to_owned().into_dyn())
                .unwrap();
            let ll = club_loglik(&pn, zsi, znj).unwrap().scalar_value();
            if i == j {
                matched += ll;
            }
            cross += ll;
        }
    }
    println!(
        "naive on first {bs}: {}",
        matched / bs as f64 - cross / (bs * bs) as f64
    );
    let tape_m = Tape::new();
    let pm = club.bind(&tape_m, false).unwrap();
    let zsm = tape_m
        .constant(zs_e.slice(ndarray::s![0..bs, ..]).to_owned().into_dyn())
        .unwrap();
    let znm = tape_m
        .constant(zn_e.slice(ndarray::s![0..bs, ..]).to_owned().into_dyn())
        .unwrap();
    println!(
        "matrix on first {bs}: {}",
        club_mi_upper(&pm, zsm, znm).unwrap().scalar_value()
    );

    // Cross-correlations of the supposedly independent eval draw.
    let n = zs_e.shape()[0] as f64;
    for j in 0..d_z {
        for k in 0..d_z {
            let mut c = 0.0;
            for i in 0..zs_e.shape()[0] {
                c += zs_e[[i, j]] * zn_e[[i, k]];
            }
            print!("{:+.3} ", c / n);
        }
        println!();
    }
    // Correlation between the fitted conditional mean and the noise factor.
    let tape_mu = Tape::new();
    let p_mu = club.bind(&tape_mu, false).unwrap();
    let zs_mu = tape_mu.constant(zs_e.clone()).unwrap();
    let mu = zs_mu
        .matmul(p_mu.get("club.mean_w1").unwrap())
        .unwrap()
        .add(p_mu.get("club.mean_b1").unwrap())
        .unwrap()
        .gelu()
        .matmul(p_mu.get("club.mean_w2").unwrap())
        .unwrap()
        .add(p_mu.get("club.mean_b2").unwrap())
        .unwrap();
    let muv = mu.value();
    let mut c_match = 0.0;
    let mut var_mu = 0.0;
    for i in 0..zs_e.shape()[0] {
        for k in 0..d_z {
            c_match += muv[[i, k]] * zn_e[[i, k]];
            var_mu += muv[[i, k]] * muv[[i, k]];
        }
    }
    println!("mu·zn matched mean {:+.4}, mu² mean {:+.4}", c_match / n, var_mu / n);

    // Reference estimate from raw arrays, no tape ops: f(i,j) =
    // −½Σ_d[(zn_jd−μ_id)²e^{−v_id}+v_id]; mean over matched minus all pairs.
    let lv = zs_mu
        .matmul(p_mu.get("club.lv_w1").unwrap())
        .unwrap()
        .add(p_mu.get("club.lv_b1").unwrap())
        .unwrap()
        .gelu()
        .matmul(p_mu.get("club.lv_w2").unwrap())
        .unwrap()
        .add(p_mu.get("club.lv_b2").unwrap())
        .unwrap()
        .clamp(-8.0, 8.0);
    let lvv = lv.value();
    let bn = zs_e.shape()[0];
    let mut lv_min = f64::MAX;
    let mut lv_max = f64::MIN;
    let mut matched_ref = 0.0;
    let mut cross_ref = 0.0;
    for i in 0..bn {
        let mut s2 = 0.0; // Σ_j Σ_d (zn_jd − μ_id)² e^{−v_id}, computed via moments
        for d in 0..d_z {
            let v = lvv[[i, d]];
            lv_min = lv_min.min(v);
            lv_max = lv_max.max(v);
            let prec = (-v).exp();
            let mu_id = muv[[i, d]];
            let matched_term = (zn_e[[i, d]] - mu_id).powi(2) * prec + v;
            matched_ref += -0.5 * matched_term;
            let mut sum_sq = 0.0;
            for j in 0..bn {
                sum_sq += (zn_e[[j, d]] - mu_id).powi(2);
            }
            s2 += sum_sq * prec + bn as f64 * v;
        }
        cross_ref += -0.5 * s2;
    }
    println!(
        "reference estimate: {}  (logvar range [{lv_min:.3}, {lv_max:.3}])",
        matched_ref / bn as f64 - cross_ref / (bn * bn) as f64
    );

    // Estimate with an *untrained* q for comparison.
    let fresh = init_club_params(&net_cfg, 123);
    let tape3 = Tape::new();
    let p3 = fresh.bind(&tape3, false).unwrap();
    let zs3 = tape3.constant(zs_e).unwrap();
    let zn3 = tape3.constant(zn_e).unwrap();
    let est0 = club_mi_upper(&p3, zs3, zn3).unwrap().scalar_value();
    println!("estimate with untrained q: {est0}");
}
