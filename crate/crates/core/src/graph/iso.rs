use super::Graph;

/// True iff `g` contains a (not necessarily induced) copy of `h`.
///
/// Backtracking over an injective vertex map, pattern vertices ordered so
/// that each one after the first is adjacent to an earlier one whenever the
/// pattern allows it; candidates must have enough degree and be adjacent to
/// the images of all earlier pattern neighbors. Exponential in `v(h)` in the
/// worst case; meant for small patterns.
pub fn contains_subgraph(g: &Graph, h: &Graph) -> bool {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return false;
    }
    let active: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    let isolated = h.n() - active.len();
    if active.is_empty() {
        return true;
    }
    let order = search_order(h, &active);
    let mut position = vec![usize::MAX; h.n()];
    for (i, &p) in order.iter().enumerate() {
        position[p] = i;
    }
    // For each pattern vertex in order: the earlier-ordered neighbors.
    let back: Vec<Vec<usize>> = order
        .iter()
        .map(|&p| {
            h.neighbors(p)
                .iter()
                .copied()
                .filter(|&q| position[q] < position[p])
                .collect()
        })
        .collect();

    let mut state = Search {
        g,
        h,
        order: &order,
        back: &back,
        image: vec![usize::MAX; h.n()],
        used: vec![false; g.n()],
        spare_needed: isolated,
    };
    state.extend(0)
}

fn search_order(h: &Graph, active: &[usize]) -> Vec<usize> {
    let mut order = Vec::with_capacity(active.len());
    let mut placed = vec![false; h.n()];
    let mut links = vec![0usize; h.n()];
    while order.len() < active.len() {
        let next = active
            .iter()
            .copied()
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], h.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in h.neighbors(next) {
            links[w] += 1;
        }
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: &'a [usize],
    back: &'a [Vec<usize>],
    image: Vec<usize>,
    used: Vec<bool>,
    spare_needed: usize,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return self.g.n() - depth >= self.spare_needed;
        }
        let p = self.order[depth];
        let back = &self.back[depth];
        let candidates: Vec<usize> = match back.first() {
            Some(&anchor) => self.g.neighbors(self.image[anchor]).to_vec(),
            None => (0..self.g.n()).collect(),
        };
        let need = self.h.degree(p);
        for t in candidates {
            if self.used[t] || self.g.degree(t) < need {
                continue;
            }
            if !back.iter().all(|&q| self.g.has_edge(self.image[q], t)) {
                continue;
            }
            self.image[p] = t;
            self.used[t] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[t] = false;
        }
        self.image[p] = usize::MAX;
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tries every injection of `V(h)` into `V(g)`.
    fn brute_contains(g: &Graph, h: &Graph) -> bool {
        fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let p = map.len();
            if p == h.n() {
                return h.edges().iter().all(|&(a, b)| g.has_edge(map[a], map[b]));
            }
            for t in 0..g.n() {
                if !used[t] {
                    used[t] = true;
                    map.push(t);
                    if go(g, h, map, used) {
                        return true;
                    }
                    map.pop();
                    used[t] = false;
                }
            }
            false
        }
        h.n() <= g.n() && go(g, h, &mut Vec::new(), &mut vec![false; g.n()])
    }

    #[test]
    fn spec_examples() {
        assert!(contains_subgraph(&Graph::complete(4), &Graph::cycle(4)));
        assert!(!contains_subgraph(&Graph::cycle(5), &Graph::cycle(4)));
        let k2 = Graph::complete(2);
        assert!(contains_subgraph(&Graph::path(2), &k2));
        assert!(!contains_subgraph(&Graph::empty(6), &k2));
    }

    #[test]
    fn isolated_pattern_vertices_need_room() {
        let h = Graph::from_edges(4, [(0, 1)]).unwrap();
        assert!(contains_subgraph(&Graph::path(4), &h));
        assert!(!contains_subgraph(&Graph::path(3), &h));
        assert!(contains_subgraph(&Graph::empty(3), &Graph::empty(3)));
        assert!(!contains_subgraph(&Graph::empty(2), &Graph::empty(3)));
    }

    #[test]
    fn disconnected_pattern() {
        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(!contains_subgraph(&Graph::path(3), &two_edges));
        assert!(contains_subgraph(&Graph::path(4), &two_edges));
        let two_triangles =
            Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!contains_subgraph(&Graph::complete(5), &two_triangles));
        assert!(contains_subgraph(&Graph::complete(6), &two_triangles));
    }

    #[test]
    fn agrees_with_injection_enumeration() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..400 {
            let gn = rng.gen_range(1..=7);
            let hn = rng.gen_range(1..=5);
            let (pg, ph) = (rng.gen_range(0.2..0.9), rng.gen_range(0.2..0.9));
            let g = random_graph(&mut rng, gn, pg);
            let h = random_graph(&mut rng, hn, ph);
            assert_eq!(contains_subgraph(&g, &h), brute_contains(&g, &h), "{g:?} {h:?}");
        }
    }

    fn random_graph(rng: &mut impl rand::Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, edges).unwrap()
    }
}
