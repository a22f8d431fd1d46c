#![allow(dead_code)]

/// All perfect matchings of `0..m` half-edges (m even).
pub fn matchings(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(free: &[usize], acc: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(acc.clone());
            return;
        };
        for i in 0..rest.len() {
            acc.push((first, rest[i]));
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &h)| h).collect();
            go(&remaining, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(&(0..m).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// Exact law of the final size (index = size) for a configuration
/// multigraph on `degrees` with transmission probability `p`, from a uniform
/// initial case: average over matchings, open-edge subsets and initial
/// vertices.
pub fn exact_final_size_pmf(degrees: &[usize], p: f64) -> Vec<f64> {
    let n = degrees.len();
    let owner: Vec<usize> = degrees.iter().enumerate().flat_map(|(v, &d)| std::iter::repeat_n(v, d)).collect();
    let all = matchings(owner.len());
    let mut pmf = vec![0.0; n + 1];
    for matching in &all {
        let edges: Vec<(usize, usize)> = matching.iter().map(|&(a, b)| (owner[a], owner[b])).collect();
        let m = edges.len();
        for open in 0u32..(1 << m) {
            let k = open.count_ones() as i32;
            let weight = p.powi(k) * (1.0 - p).powi(m as i32 - k) / all.len() as f64 / n as f64;
            for start in 0..n {
                // Reachability by repeated relaxation; graphs here are tiny.
                let mut reached = vec![false; n];
                reached[start] = true;
                let mut changed = true;
                while changed {
                    changed = false;
                    for (e, &(u, v)) in edges.iter().enumerate() {
                        if open & (1 << e) != 0 && reached[u] != reached[v] {
                            reached[u] = true;
                            reached[v] = true;
                            changed = true;
                        }
                    }
                }
                pmf[reached.iter().filter(|&&r| r).count()] += weight;
            }
        }
    }
    pmf
}

pub fn total_variation(a: &[f64], b: &[f64]) -> f64 {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| (a.get(i).copied().unwrap_or(0.0) - b.get(i).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
        / 2.0
}

/// Pearson statistic and its upper-tail p-value.
pub fn chi_square(observed: &[usize], expected_prob: &[f64]) -> (f64, f64) {
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    let total: usize = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected_prob)
        .map(|(&o, &q)| {
            let e = q * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let dof = (observed.len() - 1) as f64;
    (stat, 1.0 - ChiSquared::new(dof).unwrap().cdf(stat))
}
