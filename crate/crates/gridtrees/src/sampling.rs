//! Monte Carlo engines: a counter-based random source, Wilson's algorithm
//! for uniform spanning trees, Kruskal on a random edge permutation for the
//! MST distribution, a parallel balance-probability estimator, and exact
//! binomial tail probabilities in log space.

use crate::decimal::rational_to_decimal;
use crate::error::{Error, Result};
use crate::grid::{is_connected, DisjointSets, SpanningTree, SubtreeScratch, Topology};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output mixer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z ^= z >> 30;
    z = z.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z ^= z >> 27;
    z = z.wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based random source: every draw is a pure function of
/// (seed, stream index, draw counter), so parallel runs are byte-identical
/// regardless of how samples are scheduled across workers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSource {
    seed: u64,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// The independent draw stream for sample `index`.
    pub fn stream(&self, index: u64) -> RandomStream {
        let key = mix64(
            mix64(self.seed ^ 0xA076_1D64_78BD_642F)
                .wrapping_add(index.wrapping_mul(GOLDEN_GAMMA)),
        );
        RandomStream { key, counter: 0 }
    }
}

/// One keyed draw stream; draw j is `mix64(key + (j+1)*GOLDEN_GAMMA)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomStream {
    key: u64,
    counter: u64,
}

impl RandomStream {
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix64(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)))
    }

    /// Uniform draw from `0..bound`, unbiased via rejection.
    #[inline]
    pub fn next_below(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        let mut product = (self.next_u64() as u128) * (bound as u128);
        let mut low = product as u64;
        if low < bound {
            let threshold = bound.wrapping_neg() % bound;
            while low < threshold {
                product = (self.next_u64() as u128) * (bound as u128);
                low = product as u64;
            }
        }
        (product >> 64) as u64
    }

    /// Unbiased Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// The two spanning-tree distributions under study.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    Ust,
    Mst,
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Ust => write!(f, "ust"),
            Distribution::Mst => write!(f, "mst"),
        }
    }
}

/// Reusable sampling state for one graph. Holds the adjacency lists plus
/// all walk, shuffle, and balance-check buffers so the per-sample hot path
/// allocates nothing.
pub struct TreeSampler<'g> {
    edges: &'g [(u32, u32)],
    vertex_count: usize,
    neighbors: Vec<Vec<(u32, u32)>>,
    in_tree: Vec<bool>,
    next_vertex: Vec<u32>,
    next_edge: Vec<u32>,
    permutation: Vec<u32>,
    picked: Vec<u32>,
    sets: DisjointSets,
    scratch: SubtreeScratch,
}

impl<'g> TreeSampler<'g> {
    pub fn new<G: Topology + ?Sized>(graph: &'g G) -> Result<Self> {
        if !is_connected(graph) {
            return Err(Error::invalid("sampling requires a connected graph"));
        }
        Ok(Self::new_unchecked(graph))
    }

    fn new_unchecked<G: Topology + ?Sized>(graph: &'g G) -> Self {
        let n = graph.vertex_count();
        let edges = graph.edges();
        let mut neighbors = vec![Vec::new(); n];
        for (id, &(a, b)) in edges.iter().enumerate() {
            neighbors[a as usize].push((b, id as u32));
            neighbors[b as usize].push((a, id as u32));
        }
        TreeSampler {
            edges,
            vertex_count: n,
            neighbors,
            in_tree: vec![false; n],
            next_vertex: vec![0; n],
            next_edge: vec![0; n],
            permutation: (0..edges.len() as u32).collect(),
            picked: Vec::with_capacity(n.saturating_sub(1)),
            sets: DisjointSets::new(n),
            scratch: SubtreeScratch::new(),
        }
    }

    /// Draws one tree; the sorted edge ids land in the internal buffer.
    fn fill_tree(&mut self, distribution: Distribution, stream: &mut RandomStream) {
        match distribution {
            Distribution::Ust => self.wilson(stream),
            Distribution::Mst => self.kruskal_shuffled(stream),
        }
        self.picked.sort_unstable();
    }

    pub fn sample(
        &mut self,
        distribution: Distribution,
        stream: &mut RandomStream,
    ) -> SpanningTree {
        self.fill_tree(distribution, stream);
        SpanningTree::from_sorted_unchecked(self.vertex_count, self.picked.clone())
    }

    /// Draws one tree and reports whether it has a balanced cut edge.
    pub fn sample_is_balanced(
        &mut self,
        distribution: Distribution,
        stream: &mut RandomStream,
    ) -> bool {
        debug_assert_eq!(self.vertex_count % 2, 0);
        self.fill_tree(distribution, stream);
        self.scratch
            .has_balanced_cut(self.edges, self.vertex_count, &self.picked)
    }

    /// Wilson's loop-erased random walk from the fixed root (vertex 0),
    /// processing the remaining vertices in ascending id order. Every
    /// spanning tree comes out with probability exactly 1/T.
    fn wilson(&mut self, stream: &mut RandomStream) {
        self.in_tree.fill(false);
        self.in_tree[0] = true;
        self.picked.clear();
        for start in 1..self.vertex_count {
            let mut v = start;
            while !self.in_tree[v] {
                let options = &self.neighbors[v];
                let pick = if options.len() == 1 {
                    0
                } else {
                    stream.next_below(options.len() as u64) as usize
                };
                let (to, via) = options[pick];
                self.next_vertex[v] = to;
                self.next_edge[v] = via;
                v = to as usize;
            }
            let mut v = start;
            while !self.in_tree[v] {
                self.in_tree[v] = true;
                self.picked.push(self.next_edge[v]);
                v = self.next_vertex[v] as usize;
            }
        }
        debug_assert_eq!(self.picked.len(), self.vertex_count - 1);
    }

    /// Kruskal's scan over a uniformly shuffled edge order.
    fn kruskal_shuffled(&mut self, stream: &mut RandomStream) {
        // Restart from the identity order: the draw must be a pure function
        // of the stream, not of whatever the previous sample left behind.
        for (i, slot) in self.permutation.iter_mut().enumerate() {
            *slot = i as u32;
        }
        stream.shuffle(&mut self.permutation);
        self.sets.reset();
        self.picked.clear();
        let wanted = self.vertex_count - 1;
        for idx in 0..self.permutation.len() {
            if self.picked.len() == wanted {
                break;
            }
            let id = self.permutation[idx];
            let (a, b) = self.edges[id as usize];
            if self.sets.union(a as usize, b as usize) {
                self.picked.push(id);
            }
        }
        debug_assert_eq!(self.picked.len(), wanted);
    }
}

/// Draws one uniform spanning tree (Wilson's algorithm, root at vertex 0).
pub fn sample_ust<G: Topology + ?Sized>(
    graph: &G,
    stream: &mut RandomStream,
) -> Result<SpanningTree> {
    Ok(TreeSampler::new(graph)?.sample(Distribution::Ust, stream))
}

/// Draws one MST-distribution tree: Kruskal's algorithm on a uniformly
/// random permutation of the edge list.
pub fn sample_mst<G: Topology + ?Sized>(
    graph: &G,
    stream: &mut RandomStream,
) -> Result<SpanningTree> {
    Ok(TreeSampler::new(graph)?.sample(Distribution::Mst, stream))
}

/// Runs Kruskal's scan over an explicit edge permutation; the accepted
/// edges form the unique minimum spanning tree when the permutation ranks
/// are read as edge weights.
pub fn kruskal_from_permutation<G: Topology + ?Sized>(
    graph: &G,
    permutation: &[u32],
) -> Result<SpanningTree> {
    let m = graph.edge_count();
    if permutation.len() != m {
        return Err(Error::invalid(format!(
            "permutation has {} entries for {m} edges",
            permutation.len()
        )));
    }
    let mut seen = vec![false; m];
    for &id in permutation {
        if id as usize >= m || seen[id as usize] {
            return Err(Error::invalid("not a permutation of the edge ids"));
        }
        seen[id as usize] = true;
    }
    let n = graph.vertex_count();
    let edges = graph.edges();
    let mut sets = DisjointSets::new(n);
    let mut picked = Vec::with_capacity(n - 1);
    for &id in permutation {
        if picked.len() == n - 1 {
            break;
        }
        let (a, b) = edges[id as usize];
        if sets.union(a as usize, b as usize) {
            picked.push(id);
        }
    }
    if picked.len() != n - 1 {
        return Err(Error::invalid("graph is not connected"));
    }
    picked.sort_unstable();
    Ok(SpanningTree::from_sorted_unchecked(n, picked))
}

/// Outcome of a Monte Carlo balance-probability estimate.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MonteCarloSummary {
    pub distribution: Distribution,
    pub n: u32,
    pub samples: u64,
    pub successes: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub ci95_low: f64,
    pub ci95_high: f64,
    pub seed: u64,
}

/// Header for [`MonteCarloSummary::csv_row`].
pub const SUMMARY_CSV_HEADER: &str =
    "n,dist,samples,successes,estimate6dp,stderr,ci_low,ci_high,seed";

impl MonteCarloSummary {
    /// Estimate rendered to six decimals from the exact successes/samples
    /// ratio, never from the floating-point field.
    pub fn estimate_6dp(&self) -> String {
        let ratio = BigRational::new(
            BigInt::from(self.successes),
            BigInt::from(self.samples),
        );
        rational_to_decimal(&ratio, 6)
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.distribution,
            self.samples,
            self.successes,
            self.estimate_6dp(),
            self.std_error,
            self.ci95_low,
            self.ci95_high,
            self.seed
        )
    }
}

/// Estimates the probability that a random spanning tree of `graph` is
/// balanced, drawing `samples` trees from the chosen distribution.
///
/// Sample `i` consumes the draw stream keyed by `(seed, i)`, so the result
/// is reproducible from the summary fields alone no matter how many worker
/// threads participate.
pub fn estimate_balance_probability<G>(
    graph: &G,
    distribution: Distribution,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloSummary>
where
    G: Topology + Sync + ?Sized,
{
    if samples == 0 {
        return Err(Error::invalid("sample count must be at least 1"));
    }
    if graph.vertex_count() % 2 != 0 {
        return Err(Error::invalid(
            "balance is undefined for an odd vertex count",
        ));
    }
    if !is_connected(graph) {
        return Err(Error::invalid("sampling requires a connected graph"));
    }
    let source = RandomSource::new(seed);
    let successes: u64 = (0..samples)
        .into_par_iter()
        .map_init(
            || TreeSampler::new_unchecked(graph),
            |sampler, index| {
                sampler.sample_is_balanced(distribution, &mut source.stream(index)) as u64
            },
        )
        .sum();
    let estimate = successes as f64 / samples as f64;
    let std_error = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    let ci95_low = (estimate - 1.96 * std_error).max(0.0);
    let ci95_high = (estimate + 1.96 * std_error).min(1.0);
    Ok(MonteCarloSummary {
        distribution,
        n: (graph.vertex_count() / 2) as u32,
        samples,
        successes,
        estimate,
        std_error,
        ci95_low,
        ci95_high,
        seed,
    })
}

/// Which tail of the binomial distribution to accumulate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    Greater,
    Less,
}

// Lanczos approximation, g = 7, 9 terms; relative error below 1e-13 on the
// positive reals we use (integer arguments >= 1).
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let z = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (z + i as f64);
    }
    let t = z + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + acc.ln()
}

fn ln_choose(n: u64, k: u64) -> f64 {
    ln_gamma(n as f64 + 1.0) - ln_gamma(k as f64 + 1.0) - ln_gamma((n - k) as f64 + 1.0)
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// log10 of the exact one-sided binomial tail probability
/// P(X >= successes) or P(X <= successes) for X ~ Binomial(samples, p0).
///
/// The sum runs entirely in log space (Lanczos log-gamma for the first
/// term, exact term ratios afterwards), so tails far below 1e-300 remain
/// representable. Terms beyond the mode stop contributing once they fall
/// 60 nats under the running total.
pub fn binomial_log10_pvalue(
    successes: u64,
    samples: u64,
    p0: &BigRational,
    tail: Tail,
) -> Result<f64> {
    if samples == 0 {
        return Err(Error::invalid("samples must be at least 1"));
    }
    if successes > samples {
        return Err(Error::invalid(format!(
            "successes {successes} exceed samples {samples}"
        )));
    }
    if !p0.is_positive() || *p0 >= BigRational::from_integer(BigInt::one()) {
        return Err(Error::invalid("p0 must satisfy 0 < p0 < 1"));
    }
    let q0 = BigRational::from_integer(BigInt::one()) - p0;
    let p = ToPrimitive::to_f64(p0).unwrap_or(f64::NAN);
    let q = ToPrimitive::to_f64(&q0).unwrap_or(f64::NAN);
    let (ln_p, ln_q) = (p.ln(), q.ln());
    let n = samples;
    let k = successes;
    let mode = p * n as f64;

    let mut term = ln_choose(n, k) + k as f64 * ln_p + (n - k) as f64 * ln_q;
    let mut total = term;
    match tail {
        Tail::Greater => {
            for j in k..n {
                // advance pmf from j to j+1
                term += ((n - j) as f64 / (j + 1) as f64).ln() + ln_p - ln_q;
                total = log_add_exp(total, term);
                if (j + 1) as f64 > mode && term < total - 60.0 {
                    break;
                }
            }
        }
        Tail::Less => {
            for j in (1..=k).rev() {
                // advance pmf from j to j-1
                term += (j as f64 / (n - j + 1) as f64).ln() + ln_q - ln_p;
                total = log_add_exp(total, term);
                if ((j - 1) as f64) < mode && term < total - 60.0 {
                    break;
                }
            }
        }
    }
    Ok(total / std::f64::consts::LN_10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_spanning_trees;
    use crate::grid::GridGraph;
    use num_traits::Zero;
    use std::collections::HashMap;

    #[test]
    fn streams_are_pure_functions_of_seed_and_index() {
        let source = RandomSource::new(42);
        let a: Vec<u64> = {
            let mut s = source.stream(7);
            (0..16).map(|_| s.next_u64()).collect()
        };
        let b: Vec<u64> = {
            let mut s = source.stream(7);
            (0..16).map(|_| s.next_u64()).collect()
        };
        assert_eq!(a, b);
        let mut other = source.stream(8);
        let c: Vec<u64> = (0..16).map(|_| other.next_u64()).collect();
        assert_ne!(a, c);
        let mut reseeded = RandomSource::new(43).stream(7);
        let d: Vec<u64> = (0..16).map(|_| reseeded.next_u64()).collect();
        assert_ne!(a, d);
    }

    #[test]
    fn bounded_draws_stay_in_range() {
        let mut stream = RandomSource::new(9).stream(0);
        for bound in [1u64, 2, 3, 7, 100] {
            for _ in 0..200 {
                assert!(stream.next_below(bound) < bound);
            }
        }
    }

    #[test]
    fn shuffle_produces_permutations() {
        let mut stream = RandomSource::new(5).stream(3);
        let mut items: Vec<u32> = (0..10).collect();
        stream.shuffle(&mut items);
        let mut sorted = items.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..10).collect::<Vec<u32>>());
    }

    #[test]
    fn single_column_always_yields_the_unique_tree() {
        let g = GridGraph::new(1).unwrap();
        let source = RandomSource::new(11);
        for i in 0..20 {
            let ust = sample_ust(&g, &mut source.stream(i)).unwrap();
            let mst = sample_mst(&g, &mut source.stream(i)).unwrap();
            assert_eq!(ust.edge_ids(), &[0]);
            assert_eq!(mst.edge_ids(), &[0]);
        }
    }

    #[test]
    fn four_cycle_ust_frequencies_are_uniform() {
        let g = GridGraph::new(2).unwrap();
        let trees = enumerate_spanning_trees(&g).unwrap();
        let mut counts: HashMap<Vec<u32>, u64> =
            trees.iter().map(|t| (t.edge_ids().to_vec(), 0)).collect();
        let samples = 400_000u64;
        let source = RandomSource::new(2024);
        let mut sampler = TreeSampler::new(&g).unwrap();
        for i in 0..samples {
            let tree = sampler.sample(Distribution::Ust, &mut source.stream(i));
            *counts.get_mut(tree.edge_ids()).unwrap() += 1;
        }
        for (ids, count) in &counts {
            let freq = *count as f64 / samples as f64;
            assert!((freq - 0.25).abs() < 0.005, "tree {ids:?} at {freq}");
        }
    }

    #[test]
    fn four_cycle_mst_drops_exactly_the_last_useful_edge() {
        // On a 4-cycle the first three scanned edges always get accepted.
        let g = GridGraph::new(2).unwrap();
        for perm in [[0u32, 1, 2, 3], [3, 2, 1, 0], [2, 0, 3, 1]] {
            let tree = kruskal_from_permutation(&g, &perm).unwrap();
            let mut expected: Vec<u32> = perm[..3].to_vec();
            expected.sort_unstable();
            assert_eq!(tree.edge_ids(), &expected[..]);
        }
    }

    #[test]
    fn estimator_is_exact_on_the_four_cycle() {
        let g = GridGraph::new(2).unwrap();
        let summary =
            estimate_balance_probability(&g, Distribution::Mst, 1000, 99).unwrap();
        assert_eq!(summary.successes, 1000);
        assert_eq!(summary.estimate, 1.0);
        assert_eq!(summary.estimate_6dp(), "1.000000");
        assert_eq!(summary.ci95_high, 1.0);
    }

    #[test]
    fn estimator_rejects_zero_samples() {
        let g = GridGraph::new(2).unwrap();
        assert!(matches!(
            estimate_balance_probability(&g, Distribution::Ust, 0, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn estimator_is_reproducible() {
        let g = GridGraph::new(5).unwrap();
        let a = estimate_balance_probability(&g, Distribution::Ust, 20_000, 7).unwrap();
        let b = estimate_balance_probability(&g, Distribution::Ust, 20_000, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn estimator_tracks_exact_value_on_small_grid() {
        let g = GridGraph::new(3).unwrap();
        let summary =
            estimate_balance_probability(&g, Distribution::Ust, 100_000, 31).unwrap();
        assert!((summary.estimate - 0.6).abs() < 0.01, "{}", summary.estimate);
    }

    #[test]
    fn ust_balance_fraction_on_g3_matches_the_exact_three_fifths() {
        let g = GridGraph::new(3).unwrap();
        let summary =
            estimate_balance_probability(&g, Distribution::Ust, 1_500_000, 77).unwrap();
        assert!(
            (summary.estimate - 0.6).abs() < 0.002,
            "estimate {}",
            summary.estimate
        );
    }

    #[test]
    fn mst_balance_fraction_on_g3_matches_the_exact_four_sevenths() {
        let g = GridGraph::new(3).unwrap();
        let summary =
            estimate_balance_probability(&g, Distribution::Mst, 1_000_000, 78).unwrap();
        assert!(
            (summary.estimate - 4.0 / 7.0).abs() < 0.002,
            "estimate {}",
            summary.estimate
        );
    }

    #[test]
    fn summary_csv_row_matches_header() {
        let g = GridGraph::new(2).unwrap();
        let summary = estimate_balance_probability(&g, Distribution::Ust, 10, 5).unwrap();
        let row = summary.csv_row();
        assert_eq!(row.split(',').count(), SUMMARY_CSV_HEADER.split(',').count());
        assert!(row.starts_with("2,ust,10,10,1.000000,"));
    }

    #[test]
    fn pvalue_at_the_median_is_near_half() {
        let p0 = BigRational::new(BigInt::from(1), BigInt::from(2));
        let lg = binomial_log10_pvalue(500_000, 1_000_000, &p0, Tail::Greater).unwrap();
        assert!((-0.6..=0.0).contains(&lg), "{lg}");
    }

    #[test]
    fn pvalue_of_all_successes_is_the_point_mass() {
        let p0 = BigRational::new(BigInt::from(1), BigInt::from(2));
        let lg = binomial_log10_pvalue(1_000_000, 1_000_000, &p0, Tail::Greater).unwrap();
        let expected = -(1_000_000f64) * 2f64.log10();
        assert!((lg - expected).abs() < 1e-6 * expected.abs(), "{lg} vs {expected}");
    }

    #[test]
    fn pvalue_is_monotone_in_successes() {
        let p0 = BigRational::new(BigInt::from(3), BigInt::from(4));
        let mut last = f64::INFINITY;
        for successes in [7_000u64, 7_400, 7_600, 7_800, 8_000] {
            let lg = binomial_log10_pvalue(successes, 10_000, &p0, Tail::Greater).unwrap();
            assert!(lg < last, "successes={successes}");
            last = lg;
        }
    }

    #[test]
    fn lesser_tail_mirrors_greater_tail() {
        let p0 = BigRational::new(BigInt::from(1), BigInt::from(2));
        let a = binomial_log10_pvalue(400, 1000, &p0, Tail::Less).unwrap();
        let b = binomial_log10_pvalue(600, 1000, &p0, Tail::Greater).unwrap();
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }

    #[test]
    fn pvalue_rejects_bad_arguments() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let one = BigRational::from_integer(BigInt::one());
        assert!(binomial_log10_pvalue(5, 4, &half, Tail::Greater).is_err());
        assert!(binomial_log10_pvalue(1, 4, &one, Tail::Greater).is_err());
        assert!(binomial_log10_pvalue(1, 0, &half, Tail::Greater).is_err());
        assert!(
            binomial_log10_pvalue(1, 4, &BigRational::zero(), Tail::Greater).is_err()
        );
    }

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut factorial = 1f64;
        for n in 1..=20u64 {
            factorial *= n as f64;
            let lg = ln_gamma(n as f64 + 1.0);
            assert!(
                (lg - factorial.ln()).abs() < 1e-9,
                "n={n}: {lg} vs {}",
                factorial.ln()
            );
        }
    }
}
