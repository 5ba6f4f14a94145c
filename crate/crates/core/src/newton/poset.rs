use alloc::vec;
use alloc::vec::Vec;

use super::NewtonPoint;
use crate::error::{Error, Result};
use crate::rational::{ceil, int, q, Q};
use crate::root_data::Coweight;

/// All admissible `GL_r` Newton points `ν ⪯ μ` with `Σν = Σμ`, in increasing
/// lexicographic order.
///
/// A Newton point is a concave polygon from `(0,0)` to `(r, |μ|)` with integral
/// breakpoints lying on or below the Hodge polygon of `μ`; the search walks the
/// breakpoints left to right with strictly decreasing slopes.
pub fn newton_points_between(mu: &Coweight) -> Result<Vec<NewtonPoint>> {
    let r = mu.len();
    if r == 0 {
        return Err(Error::Invalid("empty cocharacter".into()));
    }
    if mu.0.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant);
    }
    let mut hodge = vec![0i64; r + 1];
    for i in 0..r {
        hodge[i + 1] = hodge[i] + mu.0[i];
    }
    let mut out = Vec::new();
    let mut slopes = Vec::with_capacity(r);
    search(&hodge, 0, 0, None, &mut slopes, &mut out);
    out.sort();
    Ok(out)
}

fn search(hodge: &[i64], x: usize, y: i64, prev: Option<Q>, slopes: &mut Vec<Q>, out: &mut Vec<NewtonPoint>) {
    let r = hodge.len() - 1;
    let total = hodge[r];
    if x == r {
        out.push(NewtonPoint::new_unchecked(slopes.clone()));
        return;
    }
    for x2 in x + 1..=r {
        let lo = if x2 == r { total } else { ceil(q(x2 as i64 * total, r as i64)) };
        let hi = if x2 == r { total } else { hodge[x2] };
        for y2 in lo..=hi {
            let s = q(y2 - y, (x2 - x) as i64);
            if prev.is_some_and(|p| s >= p) {
                continue;
            }
            let below = (x + 1..x2).all(|i| int(y) + s * int((i - x) as i64) <= int(hodge[i]));
            if !below {
                continue;
            }
            let n = slopes.len();
            slopes.extend(core::iter::repeat_n(s, x2 - x));
            search(hodge, x2, y2, Some(s), slopes, out);
            slopes.truncate(n);
        }
    }
}

/// The Newton points below `μ` under the dominance order.
#[derive(Clone, Debug)]
pub struct NewtonPoset {
    mu: Coweight,
    nodes: Vec<NewtonPoint>,
    covers: Vec<(usize, usize)>,
    /// Longest chain length from each node up to `μ`.
    longest: Vec<u64>,
}

impl NewtonPoset {
    pub fn new(mu: &Coweight) -> Result<Self> {
        let nodes = newton_points_between(mu)?;
        let n = nodes.len();
        let less: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| i != j && nodes[i].leq(&nodes[j])).collect())
            .collect();
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if less[i][j] && !(0..n).any(|k| less[i][k] && less[k][j]) {
                    covers.push((i, j));
                }
            }
        }
        // process from the top down: strict dominance raises ⟨2ρ, ·⟩
        let r = mu.len() as i64;
        let height = |v: &NewtonPoint| -> Q {
            v.coords().iter().enumerate().map(|(i, x)| x * int(r - 1 - 2 * i as i64)).sum()
        };
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| core::cmp::Reverse(height(&nodes[i])));
        let mut longest = vec![0u64; n];
        for &i in &order {
            longest[i] = (0..n).filter(|&j| less[i][j]).map(|j| longest[j] + 1).max().unwrap_or(0);
        }
        Ok(NewtonPoset { mu: mu.clone(), nodes, covers, longest })
    }

    pub fn mu(&self) -> &Coweight {
        &self.mu
    }

    pub fn nodes(&self) -> &[NewtonPoint] {
        &self.nodes
    }

    /// Hasse diagram edges `(i, j)` with `nodes[i] ⋖ nodes[j]`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn index_of(&self, nu: &NewtonPoint) -> Option<usize> {
        self.nodes.binary_search(nu).ok()
    }

    /// Length (in edges) of the longest chain from `ν` to `μ`.
    pub fn longest_chain(&self, nu: &NewtonPoint) -> Result<u64> {
        let i = self
            .index_of(nu)
            .ok_or_else(|| Error::Invalid(alloc::format!("{nu} is not a Newton point below {:?}", self.mu.0)))?;
        Ok(self.longest[i])
    }

    pub fn basic(&self) -> Option<&NewtonPoint> {
        self.nodes.iter().find(|v| v.is_basic())
    }
}

/// Longest chain `ν = ν_n ≺ … ≺ ν_0 = μ` of Newton points.
pub fn longest_chain(mu: &Coweight, nu: &NewtonPoint) -> Result<u64> {
    NewtonPoset::new(mu)?.longest_chain(nu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(v: &[(i64, i64)]) -> NewtonPoint {
        NewtonPoint::new(v.iter().map(|&(a, b)| q(a, b)).collect()).unwrap()
    }

    #[test]
    fn gl2_posets() {
        let p = newton_points_between(&Coweight(vec![2, 0])).unwrap();
        assert_eq!(p, vec![nu(&[(1, 1), (1, 1)]), nu(&[(2, 1), (0, 1)])]);
        let p = newton_points_between(&Coweight(vec![1, 0])).unwrap();
        assert_eq!(p, vec![nu(&[(1, 2), (1, 2)]), nu(&[(1, 1), (0, 1)])]);
        assert_eq!(newton_points_between(&Coweight(vec![5])).unwrap(), vec![nu(&[(5, 1)])]);
    }

    #[test]
    fn gl2_chain_lengths() {
        let mu = Coweight(vec![3, 0]);
        let poset = NewtonPoset::new(&mu).unwrap();
        assert_eq!(poset.nodes().len(), 3);
        assert_eq!(poset.longest_chain(&nu(&[(3, 2), (3, 2)])).unwrap(), 2);
        assert_eq!(poset.longest_chain(&nu(&[(3, 1), (0, 1)])).unwrap(), 0);
        assert_eq!(poset.covers().len(), 2);
        assert_eq!(longest_chain(&Coweight(vec![2, 0]), &nu(&[(1, 1), (1, 1)])).unwrap(), 1);
    }

    #[test]
    fn negative_entries_allowed() {
        let p = newton_points_between(&Coweight(vec![1, -1])).unwrap();
        assert_eq!(p, vec![nu(&[(0, 1), (0, 1)]), nu(&[(1, 1), (-1, 1)])]);
    }

    #[test]
    fn outside_nodes_rejected() {
        assert!(longest_chain(&Coweight(vec![2, 0]), &nu(&[(1, 2), (1, 2)])).is_err());
    }
}
