//! Library results against small, deliberately naive reference
//! implementations written here.

mod common;

use common::{gnp, rng};
use qpe_core::groundstate::{gs_correlation, ising_ground_manifold};
use qpe_core::isingcf::{
    correlation_closed_form, local_occupation, total_occupation_density, total_occupation_generic_pulse,
    IsingModel,
};
use qpe_core::walks::rrwp;
use qpe_core::{Complex, Graph, Matrix};
use rand::Rng;

type C = Complex<f64>;

/// `R(−φ) e^{−iHt} R(ϑ) |0…0⟩`, one qubit rotation at a time.
fn reference_state(h: &[f64], j: &Matrix<f64>, theta: f64, phi: f64, t: f64) -> Vec<C> {
    let n = h.len();
    let mut psi = vec![C::new(0.0, 0.0); 1 << n];
    psi[0] = C::new(1.0, 0.0);
    let rotate = |psi: &mut Vec<C>, a: f64| {
        let (s, c) = a.sin_cos();
        for q in 0..n {
            let bit = 1 << q;
            for idx in 0..psi.len() {
                if idx & bit == 0 {
                    let (z, o) = (psi[idx], psi[idx | bit]);
                    psi[idx] = z * c - o * s;
                    psi[idx | bit] = z * s + o * c;
                }
            }
        }
    };
    rotate(&mut psi, theta);
    for (idx, amp) in psi.iter_mut().enumerate() {
        let occ = |v: usize| (idx >> v & 1) as f64;
        let mut e = 0.0;
        for u in 0..n {
            e += h[u] * occ(u);
            for v in (u + 1)..n {
                e += j[(u, v)] * occ(u) * occ(v);
            }
        }
        *amp *= C::new((e * t).cos(), -(e * t).sin());
    }
    rotate(&mut psi, -phi);
    psi
}

fn occupations(psi: &[C], n: usize) -> (Vec<f64>, Vec<Vec<f64>>) {
    let mut one = vec![0.0; n];
    let mut two = vec![vec![0.0; n]; n];
    for (idx, a) in psi.iter().enumerate() {
        let p = a.norm_sqr();
        for u in 0..n {
            if idx >> u & 1 == 1 {
                one[u] += p;
                for v in 0..n {
                    if idx >> v & 1 == 1 {
                        two[u][v] += p;
                    }
                }
            }
        }
    }
    (one, two)
}

fn random_model(r: &mut impl Rng, g: &Graph) -> IsingModel<f64> {
    let n = g.n();
    let mut j = Matrix::zeros(n, n);
    for (u, v) in g.edges() {
        let w = r.gen_range(-2.0..2.0);
        j[(u, v)] = w;
        j[(v, u)] = w;
    }
    IsingModel::new((0..n).map(|_| r.gen_range(-1.0..1.0)).collect(), j).unwrap()
}

#[test]
fn closed_forms_match_reference_statevector() {
    let mut r = rng(8);
    for _ in 0..25 {
        let n = r.gen_range(1..=8);
        let g = gnp(&mut r, n, 0.6);
        let m = random_model(&mut r, &g);
        let (theta, t) = (r.gen_range(0.0..3.0), r.gen_range(0.0..7.0));
        let psi = reference_state(m.h(), m.j(), theta, theta, t);
        let (one, two) = occupations(&psi, n);
        let local = local_occupation(&g, &m, theta, t).unwrap();
        let corr = correlation_closed_form(&g, &m, theta, t).unwrap();
        for u in 0..n {
            assert!((local[u] - one[u]).abs() < 1e-10, "n_{u}: {} vs {}", local[u], one[u]);
            for v in 0..n {
                let want = two[u][v] - one[u] * one[v];
                assert!((corr[(u, v)] - want).abs() < 1e-10, "C_{u}{v}");
            }
        }
    }
}

#[test]
fn total_occupation_formulas_match_reference() {
    let mut r = rng(21);
    for _ in 0..20 {
        let n = r.gen_range(1..=8);
        let g = gnp(&mut r, n, 0.5);
        let m = IsingModel::<f64>::field_free(&g);
        let (theta, phi, t) = (r.gen_range(0.0..3.0), r.gen_range(0.0..3.0), r.gen_range(0.0..7.0));
        let sym: f64 = occupations(&reference_state(m.h(), m.j(), theta, theta, t), n).0.iter().sum();
        assert!((total_occupation_density(&g, theta, t) - sym).abs() < 1e-10);
        let gen: f64 = occupations(&reference_state(m.h(), m.j(), theta, phi, t), n).0.iter().sum();
        assert!((total_occupation_generic_pulse(&g, theta, phi, t) - gen).abs() < 1e-10);
    }
}

#[test]
fn ground_states_minimise_the_detuned_energy() {
    let mut r = rng(3);
    for _ in 0..15 {
        let n = r.gen_range(1..=12);
        let g = gnp(&mut r, n, 0.4);
        let delta = r.gen_range(0.05..0.95);
        let energy = |mask: u32| {
            let pairs = g.edges().iter().filter(|&&(u, v)| mask >> u & 1 == 1 && mask >> v & 1 == 1).count();
            pairs as f64 - delta * f64::from(mask.count_ones())
        };
        let best = (0u32..1 << n).map(energy).fold(f64::INFINITY, f64::min);
        let want: Vec<u32> = (0u32..1 << n).filter(|&m| energy(m) - best < 1e-12).collect();
        let m = ising_ground_manifold(&g, delta).unwrap();
        assert_eq!(m.configs, want);

        let c = gs_correlation::<f64>(&m).unwrap();
        for u in 0..n {
            for v in 0..n {
                let z = |mask: u32, w: usize| if mask >> w & 1 == 1 { 1.0 } else { -1.0 };
                let avg = want.iter().map(|&s| z(s, u) * z(s, v)).sum::<f64>() / want.len() as f64;
                assert!((c[(u, v)] - avg).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn rrwp_matches_repeated_walk_steps() {
    let mut r = rng(13);
    for _ in 0..10 {
        let n = r.gen_range(1..=9);
        let g = gnp(&mut r, n, 0.4);
        let tensor = rrwp::<f64>(&g, 5).unwrap();
        for start in 0..n {
            let mut dist = vec![0.0; n];
            dist[start] = 1.0;
            for k in 0..5 {
                let row = tensor.slice(k);
                for v in 0..n {
                    assert!((row[(start, v)] - dist[v]).abs() < 1e-12);
                }
                let mut next = vec![0.0; n];
                for u in 0..n {
                    let d = g.degree(u);
                    for w in g.neighbors(u) {
                        next[w] += dist[u] / d as f64;
                    }
                }
                dist = next;
            }
        }
    }
}
