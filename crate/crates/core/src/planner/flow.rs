//! Maximum flow on the type-set/type network
//! `src -> t (cap p_t(t)) -> p (unbounded, p in t) -> sink (cap r(p))`.

use std::collections::VecDeque;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Source,
    Set(usize),
    Type(usize),
}

/// Result of a max-flow solve: flow on each `(set, type)` edge, sorted.
#[derive(Debug, Clone)]
pub struct FlowSolution<T> {
    pub edges: Vec<(usize, usize, T)>,
    pub value: T,
}

/// Edmonds-Karp with a fixed exploration order: type sets in the given
/// order, and from each set its member types in increasing index order.
///
/// `members[t]` must be sorted; `supply[t]` and `demand[p]` are the source
/// and sink capacities.
pub fn max_flow<T: Scalar>(members: &[Vec<usize>], supply: &[T], demand: &[T]) -> FlowSolution<T> {
    let ns = members.len();
    let np = demand.len();
    let mut src_cap: Vec<T> = supply.to_vec();
    let mut sink_cap: Vec<T> = demand.to_vec();
    // flow[t][j] on the edge to members[t][j]
    let mut flow: Vec<Vec<T>> = members.iter().map(|m| vec![T::zero(); m.len()]).collect();
    // for each type: (set, position within members[set])
    let mut incoming: Vec<Vec<(usize, usize)>> = vec![Vec::new(); np];
    for (t, m) in members.iter().enumerate() {
        for (j, &p) in m.iter().enumerate() {
            incoming[p].push((t, j));
        }
    }
    let mut value = T::zero();

    // cheap first pass: direct src -> t -> p -> sink paths, types ascending
    for p in 0..np {
        for &(t, j) in &incoming[p] {
            if !sink_cap[p].is_positive() {
                break;
            }
            if !src_cap[t].is_positive() {
                continue;
            }
            let b = T::min_of(&src_cap[t], &sink_cap[p]);
            src_cap[t] = src_cap[t].clone() - b.clone();
            sink_cap[p] = sink_cap[p].clone() - b.clone();
            flow[t][j] = flow[t][j].clone() + b.clone();
            value = value + b;
        }
    }

    // pred for Set nodes: (Type p, reverse edge index into flow) or Source
    let mut set_pred: Vec<Option<(Node, usize)>> = vec![None; ns];
    let mut type_pred: Vec<Option<(usize, usize)>> = vec![None; np];
    loop {
        set_pred.iter_mut().for_each(|x| *x = None);
        type_pred.iter_mut().for_each(|x| *x = None);
        let mut queue = VecDeque::new();
        for t in 0..ns {
            if src_cap[t].is_positive() {
                set_pred[t] = Some((Node::Source, 0));
                queue.push_back(Node::Set(t));
            }
        }
        let mut end = None;
        'bfs: while let Some(node) = queue.pop_front() {
            match node {
                Node::Set(t) => {
                    for (j, &p) in members[t].iter().enumerate() {
                        if type_pred[p].is_none() {
                            type_pred[p] = Some((t, j));
                            if sink_cap[p].is_positive() {
                                end = Some(p);
                                break 'bfs;
                            }
                            queue.push_back(Node::Type(p));
                        }
                    }
                }
                Node::Type(p) => {
                    for &(t, j) in &incoming[p] {
                        if set_pred[t].is_none() && flow[t][j].is_positive() {
                            set_pred[t] = Some((Node::Type(p), j));
                            queue.push_back(Node::Set(t));
                        }
                    }
                }
                Node::Source => unreachable!(),
            }
        }
        let Some(end) = end else { break };

        // bottleneck
        let mut b = sink_cap[end].clone();
        let mut p = end;
        loop {
            let (t, _) = type_pred[p].expect("on path");
            match set_pred[t].expect("on path") {
                (Node::Source, _) => {
                    b = T::min_of(&b, &src_cap[t]);
                    break;
                }
                (Node::Type(prev), j) => {
                    b = T::min_of(&b, &flow[t][j]);
                    p = prev;
                }
                (Node::Set(_), _) => unreachable!(),
            }
        }
        // augment
        sink_cap[end] = sink_cap[end].clone() - b.clone();
        let mut p = end;
        loop {
            let (t, j) = type_pred[p].expect("on path");
            flow[t][j] = flow[t][j].clone() + b.clone();
            match set_pred[t].expect("on path") {
                (Node::Source, _) => {
                    src_cap[t] = src_cap[t].clone() - b.clone();
                    break;
                }
                (Node::Type(prev), jr) => {
                    flow[t][jr] = flow[t][jr].clone() - b.clone();
                    p = prev;
                }
                (Node::Set(_), _) => unreachable!(),
            }
        }
        value = value + b;
    }

    let mut edges = Vec::new();
    for (t, m) in members.iter().enumerate() {
        for (j, &p) in m.iter().enumerate() {
            if flow[t][j].is_positive() {
                edges.push((t, p, flow[t][j].clone()));
            }
        }
    }
    FlowSolution { edges, value }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn needs_rerouting() {
        // greedy sends set 0 -> type 0, blocking set 1 whose only type is 0
        let members = vec![vec![0, 1], vec![0]];
        let sol = max_flow(&members, &[r(1, 2), r(1, 2)], &[r(1, 2), r(1, 2)]);
        assert_eq!(sol.value, r(1, 1));
        assert_eq!(sol.edges, vec![(0, 1, r(1, 2)), (1, 0, r(1, 2))]);
    }

    #[test]
    fn limited_by_demand() {
        let members = vec![vec![0, 1, 2]];
        let sol = max_flow(&members, &[1.0f64], &[0.25, 0.0, 0.5]);
        assert_eq!(sol.value, 0.75);
    }
}
