//! Minimum cycle mean (Karp) and extraction of a cycle attaining it.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::ext::scale_to_integers;

/// Minimum mean weight over all cycles, or `None` for an acyclic graph.
pub(crate) fn min_cycle_mean(n: usize, edges: &[(usize, usize, BigRational)]) -> Option<BigRational> {
    let (scale, w) = scale_weights(edges);
    karp(n, edges, &w).map(|mu| mu / BigRational::from_integer(scale))
}

/// Minimum cycle mean together with a simple cycle attaining it, given as
/// edge indices in walk order.
pub(crate) fn min_mean_cycle(n: usize, edges: &[(usize, usize, BigRational)]) -> Option<(BigRational, Vec<usize>)> {
    let (scale, w) = scale_weights(edges);
    let mu = karp(n, edges, &w)?;
    // Shift weights so the minimum mean becomes exactly zero; every cycle
    // of edges that are tight for shortest-path potentials then has mean mu.
    let (p, q) = (mu.numer().clone(), mu.denom().clone());
    let shifted: Vec<BigInt> = w.iter().map(|x| x * &q - &p).collect();
    let mut d = vec![BigInt::zero(); n];
    for _ in 0..=n {
        let mut changed = false;
        for (i, &(u, v, _)) in edges.iter().enumerate() {
            let cand = &d[u] + &shifted[i];
            if cand < d[v] {
                d[v] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut tight: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(u, v, _)) in edges.iter().enumerate() {
        if &d[u] + &shifted[i] == d[v] {
            tight[u].push(i);
        }
    }
    let cycle = find_cycle(n, edges, &tight).expect("tight subgraph contains an optimal cycle");
    Some((mu / BigRational::from_integer(scale), cycle))
}

fn scale_weights(edges: &[(usize, usize, BigRational)]) -> (BigInt, Vec<BigInt>) {
    let ws: Vec<BigRational> = edges.iter().map(|e| e.2.clone()).collect();
    scale_to_integers(&ws)
}

/// Karp's recurrence with every vertex as a possible start.
fn karp(n: usize, edges: &[(usize, usize, BigRational)], w: &[BigInt]) -> Option<BigRational> {
    let mut d: Vec<Vec<Option<BigInt>>> = vec![vec![Some(BigInt::zero()); n]];
    for k in 1..=n {
        let mut row: Vec<Option<BigInt>> = vec![None; n];
        for (i, &(u, v, _)) in edges.iter().enumerate() {
            if let Some(du) = &d[k - 1][u] {
                let cand = du + &w[i];
                if row[v].as_ref().is_none_or(|cur| cand < *cur) {
                    row[v] = Some(cand);
                }
            }
        }
        d.push(row);
    }
    let mut best: Option<BigRational> = None;
    for v in 0..n {
        let Some(dn) = &d[n][v] else { continue };
        let worst = (0..n)
            .filter_map(|k| {
                d[k][v]
                    .as_ref()
                    .map(|dk| BigRational::new(dn - dk, BigInt::from(n - k)))
            })
            .max()
            .expect("row 0 is always finite");
        if best.as_ref().is_none_or(|b| worst < *b) {
            best = Some(worst);
        }
    }
    best
}

/// Any cycle in the subgraph given by `adj` (edge indices per vertex).
fn find_cycle(n: usize, edges: &[(usize, usize, BigRational)], adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    // 0 = unseen, 1 = on stack, 2 = finished
    let mut color = vec![0u8; n];
    for s in 0..n {
        if color[s] != 0 {
            continue;
        }
        // stack of (vertex, next adjacency index); path holds the edge taken into each frame
        let mut stack = vec![(s, 0usize)];
        let mut path: Vec<usize> = Vec::new();
        color[s] = 1;
        while let Some(top) = stack.last_mut() {
            let u = top.0;
            if top.1 < adj[u].len() {
                let e = adj[u][top.1];
                top.1 += 1;
                let v = edges[e].1;
                match color[v] {
                    0 => {
                        color[v] = 1;
                        stack.push((v, 0));
                        path.push(e);
                    }
                    1 => {
                        let start = stack.iter().position(|&(x, _)| x == v).unwrap();
                        let mut cycle = path[start..].to_vec();
                        cycle.push(e);
                        return Some(cycle);
                    }
                    _ => {}
                }
            } else {
                color[u] = 2;
                stack.pop();
                path.pop();
            }
        }
    }
    None
}
