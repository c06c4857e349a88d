#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use orbclose::{ComponentSpec, GaussianRational, Mode, ProblemSpec};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn g(n: i64) -> GaussianRational {
    GaussianRational::from(n)
}

pub fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn fixture(name: &str) -> String {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Small pool of root values; collisions between components are what make
/// verdicts interesting.
pub fn root_pool() -> Vec<GaussianRational> {
    vec![
        g(0),
        g(1),
        g(-1),
        g(2),
        GaussianRational::from_ratio(1, 2),
        GaussianRational::i(),
        GaussianRational::complex(1, 1),
        GaussianRational::complex(0, -1),
    ]
}

#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub k_max: usize,
    pub s_max: usize,
    pub degree_max: u32,
    pub roots_max: usize,
    pub char_range: i64,
}

pub const SUITE: Shape = Shape { k_max: 3, s_max: 6, degree_max: 6, roots_max: 3, char_range: 2 };

pub fn random_component(rng: &mut ChaCha8Rng, k: usize, shape: &Shape) -> ComponentSpec {
    let character: Vec<i64> = (0..k).map(|_| rng.gen_range(-shape.char_range..=shape.char_range)).collect();
    let degree = rng.gen_range(0..=shape.degree_max);
    let mut c = ComponentSpec::new(character, degree);
    let mut pool = root_pool();
    pool.shuffle(rng);
    let mut budget = degree;
    let count = rng.gen_range(0..=shape.roots_max);
    for a in pool.into_iter().take(count) {
        if budget == 0 {
            break;
        }
        let m = rng.gen_range(1..=budget.min(3));
        budget -= m;
        c = c.with_root(a, m);
    }
    c
}

pub fn random_spec(rng: &mut ChaCha8Rng, mode: Mode, shape: &Shape) -> ProblemSpec {
    let k = rng.gen_range(0..=shape.k_max);
    random_spec_with_k(rng, mode, k, shape)
}

pub fn random_spec_with_k(rng: &mut ChaCha8Rng, mode: Mode, k: usize, shape: &Shape) -> ProblemSpec {
    let s = rng.gen_range(1..=shape.s_max);
    let mut comps: Vec<ComponentSpec> = Vec::with_capacity(s);
    for _ in 0..s {
        // reuse a characteristic point now and then so faces carry kernels
        if !comps.is_empty() && rng.gen_bool(0.3) {
            let base = comps[rng.gen_range(0..comps.len())].clone();
            let mut c = random_component(rng, k, shape);
            let scale = rng.gen_range(1..=2) as i64;
            c.character = base.character.iter().map(|x| x * scale).collect();
            c.degree = base.degree * scale as u32;
            c.roots.retain(|_, _| false);
            let mut budget = c.degree;
            for (a, &m) in &base.roots {
                if rng.gen_bool(0.6) && m <= budget {
                    c.roots.insert(a.clone(), m);
                    budget -= m;
                }
            }
            comps.push(c);
        } else {
            comps.push(random_component(rng, k, shape));
        }
    }
    ProblemSpec::new(k, mode, comps).expect("generated specs are valid")
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
