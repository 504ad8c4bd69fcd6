use serde::Serialize;

use super::{OneSided, PLMap, SignedSymbol, TOL};

/// The 0/1 transition matrix of a Markov map: `A[a][b] = 1` iff the image of
/// cell `a` covers the interior of cell `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionMatrix {
    entries: Vec<Vec<u8>>,
}

impl TransitionMatrix {
    pub fn from_rows(entries: Vec<Vec<u8>>) -> Self {
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, a: usize, b: usize) -> u8 {
        self.entries[a][b]
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.entries
    }

    /// `Σ_{a,b} (A^{n-1})[a][b]`, the number of admissible words of length `n`.
    pub fn word_count(&self, n: usize) -> u128 {
        if n == 0 {
            return 1;
        }
        let k = self.size();
        let mut v = vec![1u128; k];
        for _ in 1..n {
            v = (0..k)
                .map(|a| (0..k).map(|b| self.entries[a][b] as u128 * v[b]).sum())
                .collect();
        }
        v.iter().sum()
    }

    /// Whether every consecutive pair in `symbols` is an allowed transition.
    pub fn allows(&self, symbols: &[usize]) -> bool {
        symbols.windows(2).all(|p| self.entries[p[0]][p[1]] == 1)
    }

    /// `trace(Aⁿ)`, the number of period-`n` symbol sequences.
    pub fn trace_power(&self, n: usize) -> u128 {
        let k = self.size();
        let mut p: Vec<Vec<u128>> = (0..k)
            .map(|i| (0..k).map(|j| u128::from(i == j)).collect())
            .collect();
        for _ in 0..n {
            p = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| (0..k).map(|m| p[i][m] * self.entries[m][j] as u128).sum())
                        .collect()
                })
                .collect();
        }
        (0..k).map(|i| p[i][i]).sum()
    }
}

/// Orbit classification of one signed endpoint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EndpointClass {
    pub symbol: SignedSymbol,
    pub value: f64,
    /// First `n ≥ 1` at which the one-sided orbit lands on a cell endpoint.
    pub hit_depth: Option<usize>,
}

impl EndpointClass {
    pub fn is_markov(&self) -> bool {
        self.hit_depth.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum MarkovStructure {
    Markov(TransitionMatrix),
    NotMarkov { non_markov: Vec<EndpointClass> },
}

impl MarkovStructure {
    pub fn matrix(&self) -> Option<&TransitionMatrix> {
        match self {
            MarkovStructure::Markov(a) => Some(a),
            MarkovStructure::NotMarkov { .. } => None,
        }
    }
}

/// Follows each signed endpoint for at most `depth` steps.
pub fn classify_endpoints(map: &PLMap, depth: usize) -> Vec<EndpointClass> {
    map.signed_symbols()
        .into_iter()
        .map(|symbol| {
            let start = map.signed_point(symbol);
            let mut p: OneSided = start;
            let mut hit_depth = None;
            for n in 1..=depth {
                p = map.shift_one_sided(p).1;
                if map.is_endpoint(p.value) {
                    hit_depth = Some(n);
                    break;
                }
            }
            EndpointClass {
                symbol,
                value: start.value,
                hit_depth,
            }
        })
        .collect()
}

/// The transition matrix when every branch image is a union of cells,
/// otherwise the signed endpoints whose orbits never reach a cell endpoint.
pub fn markov_structure(map: &PLMap, depth: usize) -> MarkovStructure {
    let images_close = map
        .branches()
        .iter()
        .all(|b| map.is_endpoint(b.image_left) && map.is_endpoint(b.image_right));
    if images_close {
        let entries = map
            .branches()
            .iter()
            .map(|img| {
                map.branches()
                    .iter()
                    .map(|c| {
                        u8::from(img.image_left <= c.left + TOL && c.right <= img.image_right + TOL)
                    })
                    .collect()
            })
            .collect();
        return MarkovStructure::Markov(TransitionMatrix { entries });
    }
    let non_markov: Vec<EndpointClass> = classify_endpoints(map, depth)
        .into_iter()
        .filter(|c| !c.is_markov())
        .collect();
    for c in &non_markov {
        log::warn!(
            "endpoint {} at {} does not reach a cell endpoint within {depth} steps",
            c.symbol,
            c.value
        );
    }
    MarkovStructure::NotMarkov { non_markov }
}

#[cfg(test)]
mod tests {
    use super::super::catalog::*;
    use super::super::{Side, DEFAULT_ENDPOINT_DEPTH};
    use super::*;

    #[test]
    fn doubling_and_golden() {
        let a = markov_structure(&doubling(), DEFAULT_ENDPOINT_DEPTH);
        assert_eq!(a.matrix().unwrap().rows(), &[vec![1, 1], vec![1, 1]]);
        let g = markov_structure(&golden_mean(), DEFAULT_ENDPOINT_DEPTH);
        assert_eq!(g.matrix().unwrap().rows(), &[vec![1, 1], vec![1, 0]]);
    }

    #[test]
    fn beta_1_9_has_one_wandering_endpoint() {
        match markov_structure(&beta_map(1.9).unwrap(), DEFAULT_ENDPOINT_DEPTH) {
            MarkovStructure::NotMarkov { non_markov } => {
                assert_eq!(non_markov.len(), 1);
                assert_eq!(
                    non_markov[0].symbol,
                    SignedSymbol {
                        cell: 1,
                        side: Side::Below
                    }
                );
                assert_eq!(non_markov[0].value, 1.0);
            }
            other => panic!("expected non-Markov, got {other:?}"),
        }
    }

    #[test]
    fn counts() {
        let g = markov_structure(&golden_mean(), DEFAULT_ENDPOINT_DEPTH);
        let a = g.matrix().unwrap();
        assert_eq!(a.word_count(3), 5);
        assert_eq!(a.word_count(0), 1);
        assert_eq!(a.trace_power(1), 1);
        assert_eq!(a.trace_power(2), 3);
        assert!(!a.allows(&[0, 1, 1]));
    }
}
