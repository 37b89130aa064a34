//! The finite-difference oracle against the jet engine on real catalog
//! chart components: 500 random probes of derivative order ≤ 4.

use biharm_core::catalog::{a2_rat, clifford, hypersphere, sample};
use biharm_core::jet::{fd_derivative, jet_at, JetSpace};

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[test]
fn jets_agree_with_finite_differences_on_catalog_charts() {
    let specs = [
        hypersphere(3, a2_rat(1, 2)).unwrap(),
        hypersphere(5, a2_rat(6, 7)).unwrap(),
        clifford(1, 3, a2_rat(1, 2)).unwrap(),
        clifford(2, 3, a2_rat(1, 3)).unwrap(),
    ];
    let mut state = 0xfeedbeefu64;
    let mut probes = 0usize;
    'outer: loop {
        for spec in &specs {
            let seed = splitmix(&mut state);
            let plan = sample(spec, 4, seed).unwrap();
            let space = JetSpace::new(spec.m, 4);
            for u in &plan.points {
                // random component and multi-index of total order 1..=4
                let comp = (splitmix(&mut state) as usize) % spec.chart.len();
                let order = 1 + (splitmix(&mut state) as usize) % 4;
                let mut alpha = vec![0u8; spec.m];
                for _ in 0..order {
                    let axis = (splitmix(&mut state) as usize) % spec.m;
                    alpha[axis] += 1;
                }
                let e = &spec.chart[comp];
                let jet = jet_at::<f64>(e, &space, u).unwrap();
                let jet_val = jet.partial(&alpha);
                let step = if order >= 3 { 1e-2 } else { 1e-3 };
                let fd = fd_derivative(e, u, &alpha, step).unwrap();
                let tol = 1e-5 * (1.0 + jet_val.abs());
                assert!(
                    (jet_val - fd.value).abs() <= tol,
                    "{}[{comp}] at {u:?}, α = {alpha:?}: jet {jet_val} vs fd {}",
                    spec.name,
                    fd.value
                );
                probes += 1;
                if probes >= 500 {
                    break 'outer;
                }
            }
        }
    }
    assert!(probes >= 500);
}
