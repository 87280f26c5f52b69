use super::Digraph;

/// Strong components of a digraph with their terminal flags.
///
/// Components are sorted internally and ordered by their smallest vertex, so
/// the partition is canonical for a given digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    components: Vec<Vec<usize>>,
    component_of: Vec<usize>,
    terminal: Vec<bool>,
}

impl ComponentPartition {
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component_of[v]
    }

    pub fn is_terminal(&self, component: usize) -> bool {
        self.terminal[component]
    }

    pub fn terminal_flags(&self) -> &[bool] {
        &self.terminal
    }

    /// Indices of terminal components.
    pub fn terminal_components(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.components.len()).filter(|&c| self.terminal[c])
    }

    pub fn terminal_count(&self) -> usize {
        self.terminal.iter().filter(|&&t| t).count()
    }

    pub fn in_terminal(&self, v: usize) -> bool {
        self.terminal[self.component_of[v]]
    }

    pub fn is_singleton_terminal(&self, v: usize) -> bool {
        let c = self.component_of[v];
        self.terminal[c] && self.components[c].len() == 1
    }

    pub fn vertices_in_terminal(&self) -> usize {
        self.terminal_components()
            .map(|c| self.components[c].len())
            .sum()
    }

    /// Terminal components as sorted vertex sets, ordered by smallest vertex.
    pub fn terminal_sets(&self) -> Vec<Vec<usize>> {
        self.terminal_components()
            .map(|c| self.components[c].clone())
            .collect()
    }
}

/// Tarjan's algorithm, iterative so deep digraphs cannot overflow the stack.
pub fn strong_components(d: &Digraph) -> ComponentPartition {
    const UNVISITED: usize = usize::MAX;
    let n = d.n();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut next_index = 0;
    // (vertex, position in its out-list)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let outs = d.out_neighbors(v);
            if *pos < outs.len() {
                let w = outs[*pos];
                *pos += 1;
                if index[w] == UNVISITED {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }

    raw.sort_unstable_by_key(|c| c[0]);
    let mut component_of = vec![0; n];
    for (i, comp) in raw.iter().enumerate() {
        for &v in comp {
            component_of[v] = i;
        }
    }
    let terminal = raw
        .iter()
        .enumerate()
        .map(|(i, comp)| {
            comp.iter()
                .all(|&v| d.out_neighbors(v).iter().all(|&w| component_of[w] == i))
        })
        .collect();
    ComponentPartition {
        components: raw,
        component_of,
        terminal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partition(n: usize, arcs: &[(usize, usize)]) -> ComponentPartition {
        strong_components(&Digraph::from_arcs(n, arcs.iter().copied()).unwrap())
    }

    #[test]
    fn directed_triangle_is_one_terminal_component() {
        let p = partition(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(p.components(), &[vec![0, 1, 2]]);
        assert_eq!(p.terminal_flags(), &[true]);
    }

    #[test]
    fn path_dag_has_sink_terminal() {
        let p = partition(3, &[(0, 1), (1, 2)]);
        assert_eq!(p.components(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(p.terminal_flags(), &[false, false, true]);
    }

    #[test]
    fn two_cycle_feeding_sink() {
        let p = partition(3, &[(0, 1), (1, 0), (1, 2)]);
        assert_eq!(p.components(), &[vec![0, 1], vec![2]]);
        assert_eq!(p.terminal_flags(), &[false, true]);
        assert!(p.is_singleton_terminal(2));
        assert_eq!(p.vertices_in_terminal(), 1);
    }

    #[test]
    fn empty_digraph() {
        let p = partition(0, &[]);
        assert!(p.is_empty());
        let p = partition(3, &[]);
        assert_eq!(p.terminal_count(), 3);
    }

    #[test]
    fn long_path_does_not_overflow() {
        let n = 200_000;
        let d = Digraph::from_arcs(n, (1..n).map(|i| (i - 1, i))).unwrap();
        let p = strong_components(&d);
        assert_eq!(p.len(), n);
        assert_eq!(p.terminal_count(), 1);
    }
}
