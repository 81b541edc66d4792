use super::arena::{lasso_from, Arena};
use super::{MinMaxInstance, SolveError};
use crate::cost::eval_lasso;
use crate::ext::ExtRational;
use crate::game::{LassoPlay, VertexId};

pub const DEFAULT_PROFILE_CAP: u128 = 1_000_000;

/// Upper value (min over Min, max over Max) and lower value (max over Max,
/// min over Min) per vertex, both over positional strategies only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceValues {
    pub upper: Vec<ExtRational>,
    pub lower: Vec<ExtRational>,
}

impl BruteForceValues {
    pub fn determined(&self) -> bool {
        self.upper == self.lower
    }
}

/// Enumerates every positional profile and evaluates its outcome from every
/// vertex.
pub fn brute_force_value(inst: &MinMaxInstance<'_>, cap: u128) -> Result<BruteForceValues, SolveError> {
    let arena = Arena::from_instance(inst);
    let n = arena.len();
    let profiles = arena
        .out
        .iter()
        .try_fold(1u128, |acc, o| acc.checked_mul(o.len() as u128))
        .unwrap_or(u128::MAX);
    if profiles > cap {
        return Err(SolveError::CapExceeded { profiles, cap });
    }
    let min_vs: Vec<usize> = (0..n).filter(|&v| arena.min_side[v]).collect();
    let max_vs: Vec<usize> = (0..n).filter(|&v| !arena.min_side[v]).collect();
    let min_count = count(&arena, &min_vs);
    let max_count = count(&arena, &max_vs);

    let mut succ: Vec<usize> = arena.out.iter().map(|o| o[0].to).collect();
    let mut upper: Vec<Option<ExtRational>> = vec![None; n];
    // lower_by_max[j][v] = min over Min strategies against Max strategy j
    let mut lower_by_max: Vec<Vec<Option<ExtRational>>> = vec![vec![None; n]; max_count];
    for i in 0..min_count {
        assign(&arena, &min_vs, i, &mut succ);
        let mut worst: Vec<Option<ExtRational>> = vec![None; n];
        for (j, lower_row) in lower_by_max.iter_mut().enumerate() {
            assign(&arena, &max_vs, j, &mut succ);
            for v in 0..n {
                let (prefix, cycle) = lasso_from(&succ, v);
                let play = LassoPlay::canonical_from(
                    prefix.into_iter().map(VertexId).collect(),
                    cycle.into_iter().map(VertexId).collect(),
                );
                let c = eval_lasso(&inst.objective, &play, inst.graph)?;
                if worst[v].as_ref().is_none_or(|w| c > *w) {
                    worst[v] = Some(c.clone());
                }
                if lower_row[v].as_ref().is_none_or(|w| c < *w) {
                    lower_row[v] = Some(c);
                }
            }
        }
        for v in 0..n {
            let w = worst[v].take().expect("at least one Max strategy");
            if upper[v].as_ref().is_none_or(|u| w < *u) {
                upper[v] = Some(w);
            }
        }
    }
    let lower = (0..n)
        .map(|v| {
            lower_by_max
                .iter()
                .map(|row| row[v].clone().expect("evaluated"))
                .max()
                .expect("at least one Max strategy")
        })
        .collect();
    Ok(BruteForceValues {
        upper: upper.into_iter().map(|u| u.expect("evaluated")).collect(),
        lower,
    })
}

fn count(arena: &Arena, vs: &[usize]) -> usize {
    vs.iter().map(|&v| arena.out[v].len()).product()
}

/// Writes the `index`-th strategy (mixed radix over `vs`) into `succ`.
fn assign(arena: &Arena, vs: &[usize], mut index: usize, succ: &mut [usize]) {
    for &v in vs {
        let k = arena.out[v].len();
        succ[v] = arena.out[v][index % k].to;
        index /= k;
    }
}
