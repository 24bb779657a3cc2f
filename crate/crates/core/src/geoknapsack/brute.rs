use num_bigint::BigInt;

use super::{KnapsackInput, Packing};
use crate::error::{Error, Result};
use crate::ratio::common_denominator;

pub const DEFAULT_BRUTE_LIMIT: usize = 20;

/// Enumerates all subsets. Ties on value go to the smaller total size, then
/// to the lexicographically smallest member list.
pub fn solve_bruteforce(input: &KnapsackInput, limit: usize) -> Result<Packing> {
    let n = input.n();
    if n > limit || n >= 63 {
        return Err(Error::TooLarge { n, limit });
    }
    let den = common_denominator(input.values());
    let scaled: Vec<BigInt> = input.values().iter().map(|v| (v * &den).to_integer()).collect();
    let tree = input.tree();

    let mut best: Option<(BigInt, u64, Vec<usize>)> = None;
    let mut in_set = vec![false; n];
    for mask in 0u64..(1u64 << n) {
        let mut size = 0u64;
        for (i, slot) in in_set.iter_mut().enumerate() {
            *slot = mask >> i & 1 == 1;
            if *slot {
                size += input.sizes()[i];
            }
        }
        if size > input.capacity() || !tree.connects_to_station(&in_set) {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| in_set[i]).collect();
        let value: BigInt = members.iter().map(|&i| &scaled[i]).sum();
        let better = match &best {
            None => true,
            Some((bv, bs, bm)) => value > *bv || (value == *bv && (size < *bs || (size == *bs && members < *bm))),
        };
        if better {
            best = Some((value, size, members));
        }
    }
    let (_, _, members) = best.expect("the empty packing is always legal");
    Ok(input.packing(members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Node, Tree};
    use crate::ratio::int;

    #[test]
    fn example_tie_break_prefers_lexicographic() {
        // s-1, 1-2, s-3; all sizes 2, capacity 4, unit values.
        let tree = Tree::new(
            3,
            vec![(Node::Station, Node::Agent(0)), (Node::Agent(0), Node::Agent(1)), (Node::Station, Node::Agent(2))],
        )
        .unwrap();
        let input = KnapsackInput::new(vec![2, 2, 2], vec![int(1); 3], 4, tree).unwrap();
        let p = solve_bruteforce(&input, 20).unwrap();
        assert_eq!(p.members, vec![0, 1]);
        assert_eq!(p.total_value, int(2));
    }

    #[test]
    fn single_item() {
        let input = KnapsackInput::new(vec![1], vec![int(7)], 1, Tree::star(1)).unwrap();
        let p = solve_bruteforce(&input, 20).unwrap();
        assert_eq!((p.members, p.total_value), (vec![0], int(7)));
    }

    #[test]
    fn nothing_fits() {
        let input = KnapsackInput::new(vec![3, 4], vec![int(1), int(2)], 2, Tree::star(2)).unwrap();
        assert_eq!(solve_bruteforce(&input, 20).unwrap(), Packing::empty());
    }

    #[test]
    fn refuses_over_limit() {
        let input = KnapsackInput::new(vec![1; 5], vec![int(1); 5], 2, Tree::star(5)).unwrap();
        assert!(matches!(solve_bruteforce(&input, 4), Err(Error::TooLarge { n: 5, limit: 4 })));
    }
}
