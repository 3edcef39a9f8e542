//! Reference implementations used as test oracles. Everything here is
//! brute force and independent of the library algorithms it checks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use latfuse_core::ctc::PosteriorMatrix;
use latfuse_core::{Arc, Label, Semiring, Weight, Wfst, EPSILON};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// String -> cost map of an acyclic automaton, found by walking every
/// path. Output labels are read; epsilons are skipped. Log costs combine
/// with a max-shifted log-sum-exp, tropical costs with min.
pub fn enumerate(f: &Wfst) -> BTreeMap<Vec<Label>, f64> {
    let mut costs: BTreeMap<Vec<Label>, Vec<f64>> = BTreeMap::new();
    if let Some(s) = f.start() {
        let mut stack = vec![(s, Vec::new(), 0.0)];
        while let Some((q, labels, cost)) = stack.pop() {
            assert!(labels.len() <= 64, "path too long; cyclic input?");
            let fin = f.final_weight(q).value();
            if fin.is_finite() {
                costs.entry(labels.clone()).or_default().push(cost + fin);
            }
            for e in f.arcs(q) {
                if !e.weight.value().is_finite() {
                    continue;
                }
                let mut l = labels.clone();
                if e.olabel != EPSILON {
                    l.push(e.olabel);
                }
                stack.push((e.next, l, cost + e.weight.value()));
            }
        }
    }
    costs
        .into_iter()
        .map(|(k, v)| {
            let c = match f.semiring() {
                Semiring::Tropical => v.iter().copied().fold(f64::INFINITY, f64::min),
                Semiring::Log => neg_log_sum_exp(&v),
            };
            (k, c)
        })
        .collect()
}

/// `-ln(sum exp(-c))`.
pub fn neg_log_sum_exp(costs: &[f64]) -> f64 {
    let m = costs.iter().copied().fold(f64::INFINITY, f64::min);
    if !m.is_finite() {
        return m;
    }
    let s: f64 = costs.iter().map(|c| (-(c - m)).exp()).sum();
    m - s.ln()
}

/// Total mass of a string map, as a cost.
pub fn total_cost(map: &BTreeMap<Vec<Label>, f64>) -> f64 {
    neg_log_sum_exp(&map.values().copied().collect::<Vec<_>>())
}

/// Asserts two string maps have the same support and costs within `tol`.
pub fn assert_same_map(a: &BTreeMap<Vec<Label>, f64>, b: &BTreeMap<Vec<Label>, f64>, tol: f64) {
    let ka: BTreeSet<_> = a.keys().collect();
    let kb: BTreeSet<_> = b.keys().collect();
    assert_eq!(ka, kb, "different string sets");
    for (k, &ca) in a {
        let cb = b[k];
        assert!((ca - cb).abs() <= tol, "string {k:?}: {ca} vs {cb}");
    }
}

pub fn same_map(a: &BTreeMap<Vec<Label>, f64>, b: &BTreeMap<Vec<Label>, f64>, tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .all(|(k, &ca)| b.get(k).is_some_and(|&cb| (ca - cb).abs() <= tol))
}

/// Collapsed-string costs of a posterior matrix, summing over all `K^T`
/// frame labelings.
pub fn brute_force_ctc(y: &PosteriorMatrix) -> BTreeMap<Vec<Label>, f64> {
    let (t_max, k) = (y.num_frames(), y.num_labels());
    let mut costs: BTreeMap<Vec<Label>, Vec<f64>> = BTreeMap::new();
    let mut idx = vec![0usize; t_max];
    loop {
        let mut out = Vec::new();
        let mut prev: Option<Label> = None;
        let mut cost = 0.0;
        for (t, &i) in idx.iter().enumerate() {
            let l = y.labels()[i];
            cost -= y.log_prob(t, i);
            if l != y.blank() && prev != Some(l) {
                out.push(l);
            }
            prev = Some(l);
        }
        costs.entry(out).or_default().push(cost);
        // odometer increment
        let mut t = 0;
        loop {
            if t == t_max {
                return costs
                    .into_iter()
                    .map(|(s, v)| (s, neg_log_sum_exp(&v)))
                    .collect();
            }
            idx[t] += 1;
            if idx[t] < k {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

/// Random posterior matrix with `T` in `1..=max_t`, `K` in `2..=max_k`.
/// Labels are `1..=K`, the last one blank.
pub fn random_posteriors(rng: &mut impl Rng, max_t: usize, max_k: usize) -> PosteriorMatrix {
    let t = rng.gen_range(1..=max_t);
    let k = rng.gen_range(2..=max_k);
    let mut values = Vec::with_capacity(t * k);
    for _ in 0..t {
        let row: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
        let z: f64 = row.iter().sum();
        values.extend(row.iter().map(|p| (p / z).ln()));
    }
    let labels: Vec<Label> = (1..=k as Label).collect();
    PosteriorMatrix::new(labels, k as Label, values).unwrap()
}

/// Random acyclic acceptor: arcs only go from lower to higher state ids.
/// Labels are drawn from `0..=num_labels`, so epsilons occur. A chain
/// `0 -> 1 -> ... -> n-1` with the last state final guarantees a path.
pub fn random_acceptor(seed: u64, max_states: usize, num_labels: Label, sr: Semiring) -> Wfst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_states);
    let mut f = Wfst::new(sr);
    f.add_states(n);
    f.set_start(0);
    for q in 0..n {
        if q + 1 < n {
            for i in 0..rng.gen_range(1..=3) {
                let next = if i == 0 { q + 1 } else { rng.gen_range(q + 1..n) };
                let label = rng.gen_range(0..=num_labels);
                f.add_arc(q, Arc::acc(label, Weight(rng.gen_range(0.0..3.0)), next));
            }
        }
        if q + 1 == n || rng.gen_bool(0.3) {
            f.set_final(q, Weight(rng.gen_range(0.0..2.0)));
        }
    }
    f
}

/// Random acyclic, epsilon-free lattice whose strings form a probability
/// distribution (`total_cost == 0`).
pub fn random_lattice(seed: u64, max_states: usize, num_labels: Label) -> Wfst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=max_states);
    let mut f = Wfst::new(Semiring::Log);
    f.add_states(n);
    f.set_start(0);
    f.set_final(n - 1, Weight::ONE);
    for q in 0..n - 1 {
        let fanout = rng.gen_range(1..=3);
        let mut outs: Vec<(Label, usize, f64)> = (0..fanout)
            .map(|i| {
                let next = if i == 0 { q + 1 } else { rng.gen_range(q + 1..n) };
                (rng.gen_range(1..=num_labels), next, rng.gen_range(0.05..1.0))
            })
            .collect();
        let z: f64 = outs.iter().map(|o| o.2).sum();
        for o in &mut outs {
            o.2 /= z;
        }
        for (label, next, p) in outs {
            f.add_arc(q, Arc::acc(label, Weight::from_prob(p), next));
        }
    }
    f
}

/// Every alignment of `h` against `r`, written as the list of aligned
/// index pairs. Unaligned reference items are deletions and unaligned
/// hypothesis items insertions.
pub fn all_matchings(n: usize, m: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(i: usize, j: usize, n: usize, m: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        out.push(cur.clone());
        for a in i..n {
            for b in j..m {
                cur.push((a, b));
                go(a + 1, b + 1, n, m, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(0, 0, n, m, &mut Vec::new(), &mut out);
    out
}

/// `(substitutions, insertions, deletions)` of the best alignment among
/// `matchings`: fewest errors, then most substitutions.
pub fn best_alignment<T: PartialEq>(r: &[T], h: &[T], matchings: &[Vec<(usize, usize)>]) -> (usize, usize, usize) {
    matchings
        .iter()
        .map(|pairs| {
            let subs = pairs.iter().filter(|&&(a, b)| r[a] != h[b]).count();
            (subs, h.len() - pairs.len(), r.len() - pairs.len())
        })
        .min_by_key(|&(s, i, d)| (s + i + d, std::cmp::Reverse(s)))
        .unwrap()
}

/// `(input, output) -> cost` relation of an acyclic transducer (log
/// semiring), by path enumeration.
pub fn enumerate_relation(f: &Wfst) -> BTreeMap<(Vec<Label>, Vec<Label>), f64> {
    let mut costs: BTreeMap<(Vec<Label>, Vec<Label>), Vec<f64>> = BTreeMap::new();
    if let Some(s) = f.start() {
        let mut stack = vec![(s, Vec::new(), Vec::new(), 0.0)];
        while let Some((q, i, o, cost)) = stack.pop() {
            let fin = f.final_weight(q).value();
            if fin.is_finite() {
                costs.entry((i.clone(), o.clone())).or_default().push(cost + fin);
            }
            for e in f.arcs(q) {
                let (mut i2, mut o2) = (i.clone(), o.clone());
                if e.ilabel != EPSILON {
                    i2.push(e.ilabel);
                }
                if e.olabel != EPSILON {
                    o2.push(e.olabel);
                }
                stack.push((e.next, i2, o2, cost + e.weight.value()));
            }
        }
    }
    costs.into_iter().map(|(k, v)| (k, neg_log_sum_exp(&v))).collect()
}

/// Relational composition of two enumerated relations.
pub fn compose_relations(
    a: &BTreeMap<(Vec<Label>, Vec<Label>), f64>,
    b: &BTreeMap<(Vec<Label>, Vec<Label>), f64>,
) -> BTreeMap<(Vec<Label>, Vec<Label>), f64> {
    let mut costs: BTreeMap<(Vec<Label>, Vec<Label>), Vec<f64>> = BTreeMap::new();
    for ((x, y), ca) in a {
        for ((y2, z), cb) in b {
            if y == y2 {
                costs.entry((x.clone(), z.clone())).or_default().push(ca + cb);
            }
        }
    }
    costs.into_iter().map(|(k, v)| (k, neg_log_sum_exp(&v))).collect()
}

/// Random acyclic transducer with independent input and output labels.
pub fn random_transducer(seed: u64, max_states: usize, num_labels: Label) -> Wfst {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max_states);
    let mut f = Wfst::new(Semiring::Log);
    f.add_states(n);
    f.set_start(0);
    for q in 0..n {
        if q + 1 < n {
            for _ in 0..rng.gen_range(1..=2) {
                let next = rng.gen_range(q + 1..n);
                let il = rng.gen_range(0..=num_labels);
                let ol = rng.gen_range(0..=num_labels);
                f.add_arc(q, Arc::new(il, ol, Weight(rng.gen_range(0.0..2.0)), next));
            }
        }
        if q + 1 == n || rng.gen_bool(0.3) {
            f.set_final(q, Weight(rng.gen_range(0.0..1.0)));
        }
    }
    f
}
