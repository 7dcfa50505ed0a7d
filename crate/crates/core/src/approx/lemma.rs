use std::collections::BTreeSet;

use crate::error::{check_cap, Error, Result};
use crate::group::AbelianGroup;

/// Output of the greedy translate-minus-union recursion on a finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaPartition {
    /// `blocks[i] = (d_i + V) ∖ ⋃_{j<i} blocks[j]`, possibly empty.
    pub blocks: Vec<Vec<usize>>,
    /// `V − V`, the set every within-block difference lies in.
    pub neighborhood_sq: Vec<usize>,
}

impl LemmaPartition {
    pub fn nonempty_blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(|b| !b.is_empty())
    }
}

/// Runs `Ω_{i+1} = (d_{i+1} + V) ∖ ⋃_{j≤i} Ω_j` over the sample `points`
/// of `group`, with `eps_neighborhood` the symmetric set `V` containing 0.
pub fn lemma_partition(group: &AbelianGroup, points: &[usize], eps_neighborhood: &[usize]) -> Result<LemmaPartition> {
    let n = group.order();
    check_cap("group order", n as u128, (1u128) << 20)?;
    let v: BTreeSet<usize> = eps_neighborhood.iter().copied().collect();
    if v.iter().chain(points).any(|&x| x >= n) {
        return Err(Error::Invalid("element outside the group".into()));
    }
    if !v.contains(&0) || v.iter().any(|&x| !v.contains(&group.neg(x))) {
        return Err(Error::Invalid("neighborhood must be symmetric and contain 0".into()));
    }
    let mut owner = vec![usize::MAX; n];
    let mut blocks = Vec::with_capacity(points.len());
    for (i, &d) in points.iter().enumerate() {
        let mut block: Vec<usize> = v
            .iter()
            .map(|&x| group.add(d, x))
            .filter(|&y| owner[y] == usize::MAX)
            .collect();
        block.sort_unstable();
        block.dedup();
        for &y in &block {
            owner[y] = i;
        }
        blocks.push(block);
    }
    let uncovered: Vec<usize> = (0..n).filter(|&y| owner[y] == usize::MAX).collect();
    if !uncovered.is_empty() {
        return Err(Error::Precondition(format!(
            "translates of the neighborhood miss {} point(s): {:?}",
            uncovered.len(),
            &uncovered[..uncovered.len().min(16)]
        )));
    }
    let sq: BTreeSet<usize> = v.iter().flat_map(|&x| v.iter().map(move |&y| (x, y))).map(|(x, y)| group.sub(x, y)).collect();
    for block in &blocks {
        for &x in block {
            for &y in block {
                if !sq.contains(&group.sub(x, y)) {
                    return Err(Error::Numeric(format!("block members {x}, {y} differ outside V − V")));
                }
            }
        }
    }
    Ok(LemmaPartition {
        blocks,
        neighborhood_sq: sq.into_iter().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_group_neighborhood_gives_one_block() {
        let g = AbelianGroup::new(vec![6]).unwrap();
        let all: Vec<usize> = (0..6).collect();
        let p = lemma_partition(&g, &[3], &all).unwrap();
        assert_eq!(p.blocks, vec![all]);
    }

    #[test]
    fn z8_by_hand() {
        let g = AbelianGroup::new(vec![8]).unwrap();
        let order: Vec<usize> = (0..8).collect();
        let p = lemma_partition(&g, &order, &[7, 0, 1]).unwrap();
        assert_eq!(p.blocks[0], vec![0, 1, 7]);
        assert_eq!(p.blocks[1], vec![2]);
        assert!(p.blocks[6].is_empty());
        assert!(p.blocks[7].is_empty());
        assert_eq!(p.neighborhood_sq, vec![0, 1, 2, 6, 7]);
        // a sparser sample still covers
        let p = lemma_partition(&g, &[0, 3, 6, 1], &[7, 0, 1]).unwrap();
        assert_eq!(p.blocks, vec![vec![0, 1, 7], vec![2, 3, 4], vec![5, 6], Vec::<usize>::new()]);
    }

    #[test]
    fn disjoint_cover_exhaustive() {
        let g = AbelianGroup::new(vec![4, 3]).unwrap();
        let v = [0, g.basis(0), g.neg(g.basis(0)), g.basis(1), g.neg(g.basis(1))];
        for start in 0..g.order() {
            let points: Vec<usize> = (0..g.order()).map(|k| (start + 5 * k) % g.order()).collect();
            let p = lemma_partition(&g, &points, &v).unwrap();
            let mut seen = vec![0; g.order()];
            for b in &p.blocks {
                for &x in b {
                    seen[x] += 1;
                }
            }
            assert!(seen.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn reports_uncovered_points() {
        let g = AbelianGroup::new(vec![8]).unwrap();
        match lemma_partition(&g, &[0], &[7, 0, 1]) {
            Err(Error::Precondition(m)) => assert!(m.contains("miss 5")),
            other => panic!("{other:?}"),
        }
        assert!(lemma_partition(&g, &[0], &[0, 1]).is_err());
    }
}
