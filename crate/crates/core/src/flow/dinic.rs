//! Integer Dinic engine shared by the rational front end and the density checker.

use std::collections::VecDeque;
use std::ops::{Add, Sub};

use num_traits::Zero;

pub(crate) trait Amount: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl<T: Clone + Ord + Zero + Add<Output = T> + Sub<Output = T>> Amount for T {}

/// Residual network. Arc `2k` is the k-th added arc, `2k + 1` its reverse.
pub(crate) struct Dinic<T> {
    adjacency: Vec<Vec<usize>>,
    head: Vec<usize>,
    residual: Vec<T>,
    original: Vec<T>,
    level: Vec<usize>,
    cursor: Vec<usize>,
}

impl<T: Amount> Dinic<T> {
    pub(crate) fn new(nodes: usize) -> Self {
        Dinic {
            adjacency: vec![Vec::new(); nodes],
            head: Vec::new(),
            residual: Vec::new(),
            original: Vec::new(),
            level: vec![0; nodes],
            cursor: vec![0; nodes],
        }
    }

    pub(crate) fn add_arc(&mut self, tail: usize, head: usize, capacity: T) -> usize {
        let id = self.head.len();
        self.adjacency[tail].push(id);
        self.head.push(head);
        self.residual.push(capacity.clone());
        self.original.push(capacity);
        self.adjacency[head].push(id + 1);
        self.head.push(tail);
        self.residual.push(T::zero());
        self.original.push(T::zero());
        id / 2
    }

    /// Flow currently carried by the k-th added arc.
    pub(crate) fn flow(&self, arc: usize) -> T {
        self.original[2 * arc].clone() - self.residual[2 * arc].clone()
    }

    pub(crate) fn run(&mut self, source: usize, sink: usize) -> T {
        let mut total = T::zero();
        while self.build_levels(source, sink) {
            self.cursor.iter_mut().for_each(|c| *c = 0);
            loop {
                let pushed = self.augment(source, sink, None);
                if pushed.is_zero() {
                    break;
                }
                total = total + pushed;
            }
        }
        total
    }

    /// Nodes reachable from `source` in the residual network.
    pub(crate) fn source_side(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adjacency.len()];
        seen[source] = true;
        let mut stack = vec![source];
        while let Some(x) = stack.pop() {
            for &id in &self.adjacency[x] {
                let y = self.head[id];
                if !seen[y] && !self.residual[id].is_zero() {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    fn build_levels(&mut self, source: usize, sink: usize) -> bool {
        const UNSEEN: usize = usize::MAX;
        self.level.iter_mut().for_each(|l| *l = UNSEEN);
        self.level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            for &id in &self.adjacency[x] {
                let y = self.head[id];
                if self.level[y] == UNSEEN && !self.residual[id].is_zero() {
                    self.level[y] = self.level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        self.level[sink] != UNSEEN
    }

    /// Pushes a blocking-flow path from `node`; `limit = None` means unbounded.
    fn augment(&mut self, node: usize, sink: usize, limit: Option<T>) -> T {
        if node == sink {
            return limit.expect("source and sink are distinct");
        }
        while self.cursor[node] < self.adjacency[node].len() {
            let id = self.adjacency[node][self.cursor[node]];
            let next = self.head[id];
            if !self.residual[id].is_zero() && self.level[next] == self.level[node] + 1 {
                let room = self.residual[id].clone();
                let bound = match &limit {
                    Some(l) if *l < room => l.clone(),
                    _ => room,
                };
                let pushed = self.augment(next, sink, Some(bound));
                if !pushed.is_zero() {
                    self.residual[id] = self.residual[id].clone() - pushed.clone();
                    self.residual[id ^ 1] = self.residual[id ^ 1].clone() + pushed.clone();
                    return pushed;
                }
            }
            self.cursor[node] += 1;
        }
        T::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_network() {
        let mut d = Dinic::<i64>::new(6);
        for (u, v, c) in [
            (0, 1, 10),
            (0, 2, 10),
            (1, 3, 4),
            (1, 4, 8),
            (2, 4, 9),
            (3, 5, 10),
            (4, 3, 6),
            (4, 5, 10),
        ] {
            d.add_arc(u, v, c);
        }
        assert_eq!(d.run(0, 5), 19);
        let side = d.source_side(0);
        assert!(side[0] && !side[5]);
    }

    #[test]
    fn disconnected() {
        let mut d = Dinic::<i64>::new(4);
        d.add_arc(0, 1, 10);
        d.add_arc(2, 3, 5);
        assert_eq!(d.run(0, 3), 0);
        assert_eq!(d.flow(0), 0);
    }
}
