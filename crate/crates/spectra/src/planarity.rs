//! Planarity testing with an embedding witness.
//!
//! The test embeds each biconnected block by iterative face splitting
//! (Demoucron-style): keep a set of faces of the embedded subgraph, pick a
//! bridge fragment, and route a path of it through a face containing all of
//! its attachment vertices.  A fragment with no admissible face witnesses
//! non-planarity.  Block embeddings are merged at cut vertices and the
//! resulting rotation system is checked against Euler's formula.

use std::collections::BTreeSet;

use crate::structure::Graph;

/// A combinatorial embedding: for every vertex, its neighbors in cyclic
/// order.  `verify` checks the witness independently via Euler's formula.
#[derive(Debug, Clone)]
pub struct Embedding {
    rotation: Vec<Vec<usize>>,
}

impl Embedding {
    /// Neighbors of `v` in rotation order (1-based vertices).
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v - 1]
    }

    /// Checks that the rotation system describes `g` and has genus zero:
    /// every component satisfies `V - E + F = 2` under face traversal.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.rotation.len() != n {
            return false;
        }
        for v in 1..=n {
            let mut rot = self.rotation[v - 1].clone();
            let mut adj = g.neighbors(v).to_vec();
            rot.sort_unstable();
            adj.sort_unstable();
            if rot != adj {
                return false;
            }
        }
        // Face traversal: the successor of directed edge (u,v) is (v,w) where
        // w follows u in the rotation at v.
        let next = |u: usize, v: usize| -> (usize, usize) {
            let rot = &self.rotation[v - 1];
            let i = rot.iter().position(|&x| x == u).unwrap();
            (v, rot[(i + 1) % rot.len()])
        };
        let mut comp = vec![0usize; n];
        let mut ncomp = 0;
        for start in 1..=n {
            if comp[start - 1] != 0 {
                continue;
            }
            ncomp += 1;
            let mut stack = vec![start];
            comp[start - 1] = ncomp;
            while let Some(v) = stack.pop() {
                for &w in g.neighbors(v) {
                    if comp[w - 1] == 0 {
                        comp[w - 1] = ncomp;
                        stack.push(w);
                    }
                }
            }
        }
        let mut faces = vec![0usize; ncomp];
        let mut verts = vec![0usize; ncomp];
        let mut edges = vec![0usize; ncomp];
        for v in 1..=n {
            verts[comp[v - 1] - 1] += 1;
            edges[comp[v - 1] - 1] += g.degree(v);
        }
        let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
        for v in 1..=n {
            for &w in g.neighbors(v) {
                if seen.contains(&(v, w)) {
                    continue;
                }
                faces[comp[v - 1] - 1] += 1;
                let (mut a, mut b) = (v, w);
                loop {
                    if !seen.insert((a, b)) {
                        return false;
                    }
                    let (na, nb) = next(a, b);
                    a = na;
                    b = nb;
                    if (a, b) == (v, w) {
                        break;
                    }
                }
            }
        }
        for c in 0..ncomp {
            let e = edges[c] / 2;
            if e == 0 {
                continue;
            }
            if verts[c] + faces[c] != e + 2 {
                return false;
            }
        }
        true
    }
}

/// Returns a planar embedding of `g`, or `None` if `g` is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Embedding> {
    let n = g.vertex_count();
    if n >= 3 && g.edge_count() > 3 * n - 6 {
        return None;
    }
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); n];
    for block in blocks(g) {
        if block.len() == 1 {
            let (u, v) = block[0];
            rotation[u - 1].push(v);
            rotation[v - 1].push(u);
            continue;
        }
        let rot = embed_block(g, &block)?;
        for (v, mut order) in rot {
            rotation[v - 1].append(&mut order);
        }
    }
    let emb = Embedding { rotation };
    debug_assert!(emb.verify(g));
    Some(emb)
}

/// Planarity of the graph; `true` answers carry an embedding witness via
/// [`planar_embedding`].
pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Biconnected components as edge lists (Tarjan edge-stack DFS).
fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let n = g.vertex_count();
    let mut num = vec![0usize; n];
    let mut low = vec![0usize; n];
    let mut counter = 0usize;
    let mut estack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();

    // Iterative DFS to avoid recursion limits on long paths.
    struct Frame {
        v: usize,
        parent: usize,
        idx: usize,
    }
    for root in 1..=n {
        if num[root - 1] != 0 {
            continue;
        }
        counter += 1;
        num[root - 1] = counter;
        low[root - 1] = counter;
        let mut stack = vec![Frame { v: root, parent: 0, idx: 0 }];
        while let Some(f) = stack.last_mut() {
            let v = f.v;
            if f.idx < g.neighbors(v).len() {
                let w = g.neighbors(v)[f.idx];
                f.idx += 1;
                if num[w - 1] == 0 {
                    estack.push((v, w));
                    counter += 1;
                    num[w - 1] = counter;
                    low[w - 1] = counter;
                    stack.push(Frame { v: w, parent: v, idx: 0 });
                } else if w != f.parent && num[w - 1] < num[v - 1] {
                    estack.push((v, w));
                    low[v - 1] = low[v - 1].min(num[w - 1]);
                }
            } else {
                let parent = f.parent;
                stack.pop();
                if parent != 0 {
                    if low[v - 1] >= num[parent - 1] {
                        // parent is a cut vertex (or root); pop one block.
                        let mut block = Vec::new();
                        while let Some(&(a, b)) = estack.last() {
                            if num[a - 1] >= num[v - 1] {
                                block.push((a, b));
                                estack.pop();
                            } else {
                                break;
                            }
                        }
                        // The tree edge (parent, v) closes the block.
                        if let Some(&(a, b)) = estack.last() {
                            if (a, b) == (parent, v) {
                                block.push((a, b));
                                estack.pop();
                            }
                        }
                        out.push(block);
                    }
                    low[parent - 1] = low[parent - 1].min(low[v - 1]);
                }
            }
        }
        debug_assert!(estack.is_empty());
    }
    out
}

type Faces = Vec<Vec<usize>>;

/// Embeds one biconnected block; returns the rotation contribution at each
/// block vertex, or `None` if the block is non-planar.
fn embed_block(_g: &Graph, block: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    let mut vertices: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let nb = vertices.len();
    let id = |v: usize| vertices.binary_search(&v).unwrap();

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nb];
    for &(a, b) in block {
        adj[id(a)].push(id(b));
        adj[id(b)].push(id(a));
    }
    let m = block.len();
    if nb >= 3 && m > 3 * nb - 6 {
        return None;
    }

    // Start from any cycle (exists: the block has >= 2 edges and is 2-connected).
    let cycle = find_cycle(&adj)?;
    let mut embedded_v = vec![false; nb];
    let mut embedded_e: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &v in &cycle {
        embedded_v[v] = true;
    }
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        embedded_e.insert(key(a, b));
    }
    let mut faces: Faces = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while embedded_e.len() < m {
        let frags = fragments(&adj, &embedded_v, &embedded_e);
        debug_assert!(!frags.is_empty());
        // Choose the most constrained fragment.
        let mut best: Option<(usize, Vec<usize>)> = None;
        for (fi, frag) in frags.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, face)| frag.attachments.iter().all(|a| face.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if best.as_ref().map_or(true, |(_, ad)| admissible.len() < ad.len()) {
                best = Some((fi, admissible));
            }
        }
        let (fi, admissible) = best.unwrap();
        let frag = &frags[fi];
        let path = alpha_path(&adj, &embedded_v, &embedded_e, frag);
        let face_idx = admissible[0];

        // Split the chosen face along the path.
        let face = faces.swap_remove(face_idx);
        let (a, b) = (path[0], path[path.len() - 1]);
        let pa = face.iter().position(|&x| x == a).unwrap();
        let pb = face.iter().position(|&x| x == b).unwrap();
        let len = face.len();
        // New faces: arc a..b of the old cycle plus the path reversed, and
        // arc b..a plus the path forwards.  Orientations stay consistent, so
        // each directed edge still lies on exactly one face.
        let mut f1 = Vec::new();
        let mut i = pa;
        while i != pb {
            f1.push(face[i]);
            i = (i + 1) % len;
        }
        f1.push(b);
        f1.extend(path[1..path.len() - 1].iter().rev());
        let mut f2 = Vec::new();
        let mut i = pb;
        while i != pa {
            f2.push(face[i]);
            i = (i + 1) % len;
        }
        f2.push(a);
        f2.extend(path[1..path.len() - 1].iter());
        faces.push(f1);
        faces.push(f2);

        for w in &path[1..path.len() - 1] {
            embedded_v[*w] = true;
        }
        for w in path.windows(2) {
            embedded_e.insert(key(w[0], w[1]));
        }
    }

    // Rotation from faces: successor of directed edge (u,v) within its face
    // gives "w follows u in the rotation at v".
    let mut follow: Vec<std::collections::BTreeMap<usize, usize>> =
        vec![std::collections::BTreeMap::new(); nb];
    for face in &faces {
        let k = face.len();
        for i in 0..k {
            let u = face[i];
            let v = face[(i + 1) % k];
            let w = face[(i + 2) % k];
            follow[v].insert(u, w);
        }
    }
    let mut out = Vec::new();
    for v in 0..nb {
        let mut order = Vec::with_capacity(adj[v].len());
        let mut cur = adj[v][0];
        for _ in 0..adj[v].len() {
            order.push(vertices[cur]);
            cur = *follow[v].get(&cur)?;
        }
        // A proper embedding gives a single orbit through all neighbors.
        if cur != adj[v][0] {
            return None;
        }
        let mut sorted = order.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != adj[v].len() {
            return None;
        }
        out.push((vertices[v], order));
    }
    Some(out)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Any simple cycle in a graph with minimum degree >= 2 (local ids).
fn find_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut state = vec![0u8; n];
    let mut stack = vec![(0usize, 0usize)];
    state[0] = 1;
    while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
        if *idx < adj[v].len() {
            let w = adj[v][*idx];
            *idx += 1;
            if w == parent[v] {
                continue;
            }
            if state[w] == 1 {
                // Back edge: recover cycle w .. v.
                let mut cycle = vec![v];
                let mut x = v;
                while x != w {
                    x = parent[x];
                    cycle.push(x);
                }
                cycle.reverse();
                return Some(cycle);
            }
            if state[w] == 0 {
                state[w] = 1;
                parent[w] = v;
                stack.push((w, 0));
            }
        } else {
            state[v] = 2;
            stack.pop();
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior (non-embedded) vertices; empty for a single chord.
    interior: Vec<usize>,
    /// For chord fragments, the chord itself.
    chord: Option<(usize, usize)>,
}

fn fragments(
    adj: &[Vec<usize>],
    embedded_v: &[bool],
    embedded_e: &BTreeSet<(usize, usize)>,
) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    // Chord fragments: unembedded edges between embedded vertices.
    for v in 0..n {
        for &w in &adj[v] {
            if v < w
                && embedded_v[v]
                && embedded_v[w]
                && !embedded_e.contains(&key(v, w))
            {
                out.push(Fragment {
                    attachments: vec![v, w],
                    interior: vec![],
                    chord: Some((v, w)),
                });
            }
        }
    }
    // Component fragments.
    let mut seen = vec![false; n];
    for s in 0..n {
        if embedded_v[s] || seen[s] {
            continue;
        }
        let mut comp = vec![s];
        let mut att = BTreeSet::new();
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if embedded_v[w] {
                    att.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        out.push(Fragment {
            attachments: att.into_iter().collect(),
            interior: comp,
            chord: None,
        });
    }
    out
}

/// A simple path between two distinct attachments whose interior lies in the
/// fragment.
fn alpha_path(
    adj: &[Vec<usize>],
    embedded_v: &[bool],
    _embedded_e: &BTreeSet<(usize, usize)>,
    frag: &Fragment,
) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let start_att = frag.attachments[0];
    // BFS from an attachment through interior vertices to another attachment.
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut inside = vec![false; n];
    for &v in &frag.interior {
        inside[v] = true;
    }
    let mut queue = std::collections::VecDeque::new();
    for &w in &adj[start_att] {
        if inside[w] && parent[w] == usize::MAX {
            parent[w] = start_att;
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if embedded_v[w] && w != start_att {
                // Found the far attachment; build the path.
                let mut path = vec![w, v];
                let mut x = v;
                while x != start_att {
                    x = parent[x];
                    path.push(x);
                }
                path.reverse();
                return path;
            }
            if inside[w] && parent[w] == usize::MAX {
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    unreachable!("fragment in a biconnected block has at least two attachments");
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn complete(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 1..n {
            for v in u + 1..=n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::new(a + b);
        for u in 1..=a {
            for v in a + 1..=a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    // Oracle: a graph is planar iff it has no subdivision of K5 or K3,3
    // (Kuratowski).  Feasible for graphs with up to ~8 vertices.
    fn connect(
        g: &Graph,
        pairs: &[(usize, usize)],
        idx: usize,
        used: &mut Vec<bool>,
        branch: &[usize],
    ) -> bool {
        if idx == pairs.len() {
            return true;
        }
        let (s, t) = pairs[idx];
        fn paths(
            g: &Graph,
            v: usize,
            t: usize,
            pairs: &[(usize, usize)],
            idx: usize,
            used: &mut Vec<bool>,
            branch: &[usize],
        ) -> bool {
            for &w in g.neighbors(v) {
                if w == t {
                    if connect(g, pairs, idx + 1, used, branch) {
                        return true;
                    }
                } else if !used[w - 1] && !branch.contains(&w) {
                    used[w - 1] = true;
                    if paths(g, w, t, pairs, idx, used, branch) {
                        return true;
                    }
                    used[w - 1] = false;
                }
            }
            false
        }
        paths(g, s, t, pairs, idx, used, branch)
    }

    fn has_subdivision(g: &Graph, left: usize, right: usize) -> bool {
        // left = right = 0 encodes K5; otherwise K_{left,right}.
        let n = g.vertex_count();
        let k = if left == 0 { 5 } else { left + right };
        let mut picks = Vec::new();
        fn choose(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in from..=n {
                cur.push(v);
                choose(n, k, v + 1, cur, out);
                cur.pop();
            }
        }
        choose(n, k, 1, &mut Vec::new(), &mut picks);
        for branch in &picks {
            let splits: Vec<Vec<usize>> = if left == 0 {
                vec![branch.clone()]
            } else {
                // Every way to pick the left side of the bipartition.
                let mut out = Vec::new();
                choose(k, left, 1, &mut Vec::new(), &mut out);
                out.into_iter()
                    .map(|idxs| idxs.iter().map(|&i| branch[i - 1]).collect())
                    .collect()
            };
            for left_side in splits {
                let mut pairs = Vec::new();
                if left == 0 {
                    for i in 0..k {
                        for j in i + 1..k {
                            pairs.push((branch[i], branch[j]));
                        }
                    }
                } else {
                    for &u in &left_side {
                        for &v in branch.iter().filter(|v| !left_side.contains(v)) {
                            pairs.push((u, v));
                        }
                    }
                }
                let mut used = vec![false; n];
                if connect(g, &pairs, 0, &mut used, branch) {
                    return true;
                }
            }
        }
        false
    }

    fn kuratowski_planar(g: &Graph) -> bool {
        !has_subdivision(g, 0, 0) && !has_subdivision(g, 3, 3)
    }

    #[test]
    fn small_complete_graphs() {
        assert!(is_planar(&complete(4)));
        assert!(!is_planar(&complete(5)));
        assert!(!is_planar(&complete_bipartite(3, 3)));
        assert!(is_planar(&complete_bipartite(2, 3)));
        assert!(is_planar(&Graph::new(1)));
    }

    #[test]
    fn subdivided_kuratowski_graphs_stay_non_planar() {
        // K5 with one edge subdivided through vertex 6.
        let mut g = Graph::new(6);
        for u in 1..5 {
            for v in u + 1..=5 {
                if (u, v) != (1, 2) {
                    g.add_edge(u, v);
                }
            }
        }
        g.add_edge(1, 6);
        g.add_edge(6, 2);
        assert!(!is_planar(&g));
        assert!(!kuratowski_planar(&g));
    }

    #[test]
    fn agrees_with_the_kuratowski_oracle_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(2024);
        for trial in 0..300 {
            let n = rng.gen_range(3..=8);
            let p = [0.3, 0.5, 0.7][trial % 3];
            let mut g = Graph::new(n);
            for u in 1..n {
                for v in u + 1..=n {
                    if rng.gen_bool(p) {
                        g.add_edge(u, v);
                    }
                }
            }
            let expected = kuratowski_planar(&g);
            match planar_embedding(&g) {
                Some(emb) => {
                    assert!(expected, "false positive on {:?}", g.edges());
                    assert!(emb.verify(&g), "bad witness on {:?}", g.edges());
                }
                None => assert!(!expected, "false negative on {:?}", g.edges()),
            }
        }
    }

    #[test]
    fn embeddings_verify_on_structured_families() {
        for n in [2, 5, 16, 64, 128] {
            let g = crate::structure::gaifman_graph(&crate::gens::spiral(n).unwrap());
            let emb = planar_embedding(&g).expect("spirals are planar");
            assert!(emb.verify(&g));
        }
    }
}
