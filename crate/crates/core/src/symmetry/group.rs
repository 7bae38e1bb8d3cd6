//! Closure, inverses and associativity for a finite generating set.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{compose, inverse, SymmetryCandidate};
use crate::algebra::Real;
use crate::error::{Error, Result};

pub const DEFAULT_WORD_LENGTH: usize = 4;

/// Above this many elements associativity is checked on random triples.
const EXHAUSTIVE_TRIPLES: usize = 16;
const RANDOM_TRIPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct GroupReport<R: Real> {
    /// Distinct elements reached, generators first.
    pub elements: Vec<SymmetryCandidate<R>>,
    /// Longest word length explored.
    pub word_length: usize,
    /// A word length was reached that produced nothing new.
    pub closed: bool,
    pub inverses_present: bool,
    pub associative: bool,
    pub triples_checked: usize,
}

impl<R: Real> GroupReport<R> {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn is_group(&self) -> bool {
        self.closed && self.inverses_present && self.associative
    }
}

fn contains<R: Real>(set: &[SymmetryCandidate<R>], x: &SymmetryCandidate<R>, tol: f64) -> bool {
    set.iter().any(|e| e.approx_eq(x, tol))
}

/// Breadth-first closure of `generators` under composition, up to words of
/// length `max_word_length`.
pub fn group_check<R: Real>(
    generators: &[SymmetryCandidate<R>],
    max_word_length: usize,
    tol: f64,
    seed: u64,
) -> Result<GroupReport<R>> {
    if generators.is_empty() {
        return Err(Error::InvalidConfig("group-check needs at least one generator".into()));
    }
    if max_word_length == 0 {
        return Err(Error::InvalidConfig("word length must be at least 1".into()));
    }
    if generators.iter().any(|g| !g.is_invertible()) {
        return Err(Error::SingularMatrix);
    }

    let mut elements: Vec<SymmetryCandidate<R>> = Vec::new();
    for g in generators {
        if !contains(&elements, g, tol) {
            elements.push(g.clone());
        }
    }
    let mut frontier = elements.clone();
    let mut word_length = 1;
    let mut closed = false;
    while word_length < max_word_length {
        word_length += 1;
        let mut fresh = Vec::new();
        for f in &frontier {
            for g in generators {
                let p = compose(f, g);
                if !contains(&elements, &p, tol) && !contains(&fresh, &p, tol) {
                    fresh.push(p);
                }
            }
        }
        if fresh.is_empty() {
            closed = true;
            break;
        }
        elements.extend(fresh.iter().cloned());
        frontier = fresh;
    }

    let inverses_present = elements
        .iter()
        .all(|e| inverse(e).is_ok_and(|inv| contains(&elements, &inv, tol)));

    let assoc = |a: &SymmetryCandidate<R>, b: &SymmetryCandidate<R>, c: &SymmetryCandidate<R>| {
        compose(&compose(a, b), c).approx_eq(&compose(a, &compose(b, c)), tol)
    };
    let n = elements.len();
    let (associative, triples_checked) = if n <= EXHAUSTIVE_TRIPLES {
        let mut ok = true;
        for a in &elements {
            for b in &elements {
                for c in &elements {
                    ok &= assoc(a, b, c);
                }
            }
        }
        (ok, n * n * n)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ok = (0..RANDOM_TRIPLES).all(|_| {
            let [a, b, c] = [0; 3].map(|_| &elements[rng.random_range(0..n)]);
            assoc(a, b, c)
        });
        (ok, RANDOM_TRIPLES)
    };

    Ok(GroupReport { elements, word_length, closed, inverses_present, associative, triples_checked })
}
