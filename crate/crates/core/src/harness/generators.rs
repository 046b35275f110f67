//! Instance generators: the optimality family and seeded random systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::invariants::{default_dreg_cap, degree_of_regularity};
use crate::monomial::{enumerate_monomials, DegreeMode, Monomial, TermOrder};
use crate::poly::{PolySystem, Polynomial, Ring};

/// `{x^k + y, y^k + x, xy}` over GF(p), grevlex.
pub fn gen_fk(k: u32, p: u64) -> Result<PolySystem> {
    if k < 2 {
        return Err(Error::Domain(format!("the family needs k >= 2, got {k}")));
    }
    let k = u16::try_from(k).map_err(|_| Error::Domain(format!("k = {k} is too large")))?;
    let ring = Ring::new(2, PrimeField::new(p)?, TermOrder::Grevlex)?;
    let m = |e: [u16; 2]| Monomial::new(&e).expect("two variables");
    PolySystem::new(
        ring,
        vec![
            Polynomial::from_terms(ring, [(m([k, 0]), 1), (m([0, 1]), 1)]),
            Polynomial::from_terms(ring, [(m([0, k]), 1), (m([1, 0]), 1)]),
            Polynomial::monomial(ring, m([1, 1])),
        ],
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub seed: u64,
    pub nvars: usize,
    /// One degree bound per polynomial; the number of polynomials is its length.
    pub degrees: Vec<u32>,
    /// Inclusion probability of each monomial, in (0, 1].
    pub density: f64,
    pub p: u64,
    pub order: TermOrder,
    /// Resample until `max deg <= d_reg < inf`.
    pub require_hypothesis: bool,
    pub max_retries: u32,
}

impl RandomSpec {
    pub fn new(seed: u64, nvars: usize, degrees: Vec<u32>, p: u64) -> Self {
        RandomSpec {
            seed,
            nvars,
            degrees,
            density: 0.5,
            p,
            order: TermOrder::Grevlex,
            require_hypothesis: false,
            max_retries: 100,
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, ring: Ring, support: &[Monomial], density: f64) -> Polynomial {
    let p = ring.field().modulus();
    loop {
        let mut terms = Vec::new();
        for m in support {
            if rng.gen_bool(density) {
                terms.push((*m, rng.gen_range(1..p) as i64));
            }
        }
        let f = Polynomial::from_terms(ring, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Deterministic random system: each monomial of degree at most the bound is
/// included independently with probability `density`, with a uniform nonzero
/// coefficient.
pub fn gen_random(spec: &RandomSpec) -> Result<PolySystem> {
    if !(spec.density > 0.0 && spec.density <= 1.0) {
        return Err(Error::Domain(format!(
            "density must lie in (0, 1], got {}",
            spec.density
        )));
    }
    if spec.degrees.is_empty() {
        return Err(Error::Domain("at least one polynomial is required".into()));
    }
    let ring = Ring::new(spec.nvars, PrimeField::new(spec.p)?, spec.order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let supports: Vec<Vec<Monomial>> = spec
        .degrees
        .iter()
        .map(|&d| enumerate_monomials(spec.nvars, d, DegreeMode::AtMost, TermOrder::Grevlex))
        .collect();
    for _ in 0..=spec.max_retries {
        let polys = supports
            .iter()
            .map(|s| random_poly(&mut rng, ring, s, spec.density))
            .collect();
        let system = PolySystem::new(ring, polys)?;
        if !spec.require_hypothesis || satisfies_hypothesis(&system) {
            return Ok(system);
        }
    }
    Err(Error::Generation(format!(
        "no system with max deg <= d_reg < inf after {} attempts",
        spec.max_retries as u64 + 1
    )))
}

/// `max deg(f_i) <= d_reg(F) < inf`, with `d_reg` searched up to its default cap.
pub fn satisfies_hypothesis(system: &PolySystem) -> bool {
    degree_of_regularity(system, default_dreg_cap(system))
        .finite()
        .is_some_and(|d| system.max_degree() <= d)
}
