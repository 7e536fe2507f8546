use super::{LabeledGraph, StateId};

/// Strongly connected components (iterative Tarjan). Each component is
/// sorted, and components are ordered by their smallest state.
pub fn strongly_connected_components(g: &LabeledGraph) -> Vec<Vec<StateId>> {
    const UNVISITED: usize = usize::MAX;
    let n = g.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;
    let succ: Vec<Vec<usize>> = g
        .ids()
        .map(|s| g.out_edges(s).map(|(_, t)| t.0).collect())
        .collect();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        // (node, next successor position)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if let Some(&w) = succ[v].get(frame.1) {
                frame.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        comp.push(StateId(w));
                        if w == v {
                            break;
                        }
                    }
                    comp.sort();
                    components.push(comp);
                }
            }
        }
    }
    components.sort_by_key(|c| c[0]);
    components
}

/// Strong connectivity of the whole graph. A single state counts as
/// irreducible with or without a self-loop; the empty graph does not.
pub fn is_irreducible_graph(g: &LabeledGraph) -> bool {
    match g.len() {
        0 => false,
        1 => true,
        _ => strongly_connected_components(g).len() == 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{edge, words};
    use crate::graph::StateInfo;
    use crate::words::Alphabet;

    #[test]
    fn two_cycle_is_one_component() {
        let a = Alphabet::from_chars("ab").unwrap();
        let g = LabeledGraph::assemble(
            a,
            vec![StateInfo::named("u"), StateInfo::named("v")],
            vec![edge(0, 1, 0), edge(1, 0, 1)],
        )
        .unwrap();
        assert_eq!(
            strongly_connected_components(&g),
            vec![vec![StateId(0), StateId(1)]]
        );
        assert!(is_irreducible_graph(&g));
    }

    #[test]
    fn reducible_presentation_splits_into_four() {
        let a = Alphabet::from_chars("01").unwrap();
        let g = LabeledGraph::assemble(
            a.clone(),
            words(&a, &["ε", "0", "1", "11", "110"]),
            vec![
                edge(0, 1, 0),
                edge(0, 2, 1),
                edge(1, 2, 1),
                edge(2, 1, 0),
                edge(2, 3, 1),
                edge(3, 4, 0),
            ],
        )
        .unwrap();
        let sccs = strongly_connected_components(&g);
        assert_eq!(
            sccs,
            vec![
                vec![StateId(0)],
                vec![StateId(1), StateId(2)],
                vec![StateId(3)],
                vec![StateId(4)]
            ]
        );
        assert!(!is_irreducible_graph(&g));
    }

    #[test]
    fn lone_state_without_loop_is_irreducible() {
        let a = Alphabet::from_chars("ab").unwrap();
        let g = LabeledGraph::assemble(a, vec![StateInfo::named("s")], vec![]).unwrap();
        assert!(is_irreducible_graph(&g));
        assert_eq!(strongly_connected_components(&g).len(), 1);
    }

    #[test]
    fn long_chain_does_not_overflow() {
        let a = Alphabet::from_chars("a").unwrap();
        let n = 50_000;
        let states = (0..n).map(|i| StateInfo::named(i.to_string())).collect();
        let edges = (0..n).map(|i| edge(i, (i + 1) % n, 0));
        let g = LabeledGraph::assemble(a, states, edges).unwrap();
        assert!(is_irreducible_graph(&g));
    }
}
