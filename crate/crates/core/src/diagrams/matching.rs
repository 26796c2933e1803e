use std::collections::VecDeque;

const NIL: usize = usize::MAX;

/// Maximum bipartite matching size by Hopcroft–Karp. `adj[u]` lists the right vertices
/// joined to left vertex `u`.
pub(crate) fn max_matching(adj: &[Vec<usize>], right: usize) -> usize {
    let left = adj.len();
    let mut match_l = vec![NIL; left];
    let mut match_r = vec![NIL; right];
    let mut dist = vec![0usize; left];
    let mut size = 0;
    loop {
        // BFS layers from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..left {
            if match_l[u] == NIL {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NIL {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return size;
        }
        let mut it = vec![0usize; left];
        for u in 0..left {
            if match_l[u] == NIL && augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut it) {
                size += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    // iterative DFS along the layered graph
    let mut stack = vec![u];
    while let Some(&x) = stack.last() {
        if it[x] == adj[x].len() {
            dist[x] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adj[x][it[x]];
        it[x] += 1;
        let w = match_r[v];
        if w == NIL {
            // flip the path recorded on the stack
            let mut v = v;
            while let Some(x) = stack.pop() {
                let prev = match_l[x];
                match_l[x] = v;
                match_r[v] = x;
                v = prev;
            }
            return true;
        }
        if dist[w] == dist[x] + 1 {
            stack.push(w);
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_and_deficient() {
        let adj = vec![vec![0, 1], vec![0], vec![1, 2]];
        assert_eq!(max_matching(&adj, 3), 3);
        let adj = vec![vec![0], vec![0], vec![0]];
        assert_eq!(max_matching(&adj, 1), 1);
        assert_eq!(max_matching(&[], 0), 0);
    }

    #[test]
    fn needs_augmenting_path() {
        // greedy would match 0-0 and block 1
        let adj = vec![vec![0, 1], vec![0], vec![1, 2], vec![2]];
        assert_eq!(max_matching(&adj, 3), 3);
    }
}
