use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{MetricGraph, VertexCondition};
use crate::scalar::Real;

/// A randomly generated connected graph together with the raw input used to build it.
#[derive(Debug, Clone)]
pub struct CorpusGraph<T> {
    pub conditions: Vec<VertexCondition>,
    pub edges: Vec<(usize, usize, T)>,
    pub graph: MetricGraph<T>,
}

/// `count` connected graphs drawn deterministically from `seed`.
///
/// Families rotate through random trees, stars, mandarins, lassos and general
/// graphs (a spanning tree plus loops and parallel edges), all with at most
/// eight edges, lengths in `[0.5, 2)` and each vertex Dirichlet with
/// probability 1/4.
pub fn random_corpus<T: Real>(seed: u64, count: usize) -> Vec<CorpusGraph<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut family = 0usize;
    while out.len() < count {
        let len = |rng: &mut ChaCha8Rng| T::lit(rng.gen_range(0.5..2.0));
        let mut edges = Vec::new();
        let nv = match family % 5 {
            0 => {
                let nv = rng.gen_range(2..=7);
                for v in 1..nv {
                    edges.push((rng.gen_range(0..v), v, len(&mut rng)));
                }
                nv
            }
            1 => {
                let leaves = rng.gen_range(2..=6);
                for v in 1..=leaves {
                    edges.push((0, v, len(&mut rng)));
                }
                leaves + 1
            }
            2 => {
                for _ in 0..rng.gen_range(2..=5) {
                    edges.push((0, 1, len(&mut rng)));
                }
                2
            }
            3 => {
                edges.push((0, 1, len(&mut rng)));
                edges.push((1, 1, len(&mut rng)));
                2
            }
            _ => {
                let nv = rng.gen_range(2..=5);
                for v in 1..nv {
                    edges.push((rng.gen_range(0..v), v, len(&mut rng)));
                }
                for _ in 0..rng.gen_range(1..=(9 - nv).min(4)) {
                    edges.push((rng.gen_range(0..nv), rng.gen_range(0..nv), len(&mut rng)));
                }
                nv
            }
        };
        family += 1;
        let conditions: Vec<_> = (0..nv)
            .map(|_| if rng.gen_bool(0.25) { VertexCondition::Dirichlet } else { VertexCondition::Neumann })
            .collect();
        if let Ok(graph) = MetricGraph::new(&conditions, &edges) {
            out.push(CorpusGraph { conditions, edges, graph });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible() {
        let a = random_corpus::<f64>(7, 5);
        let b = random_corpus::<f64>(7, 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.edges, y.edges);
            assert_eq!(x.conditions, y.conditions);
        }
        assert!(random_corpus::<f64>(3, 40).iter().all(|g| g.edges.len() <= 8));
    }
}
