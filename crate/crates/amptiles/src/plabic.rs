//! Plabic graphs with an explicit rotation system, perfect orientations and
//! positroids, cell dimension via face counts, boundary operations, the BCFW
//! product, and cell-point sampling through vertex-disjoint flows.
//!
//! Graphs for positroids are synthesized by a bridge decomposition: peel the
//! target positroid down to a zero-dimensional one, then replay the bridges on
//! a lollipop base graph. Every constructed graph is checked to embed in a
//! disk (genus zero) and, in tests, to reproduce its positroid exactly.

use crate::error::{Error, Result};
use crate::grassmannian::{matrix_from_pluckers, subsets_k, GrassmannPoint, PluckerVector};
use crate::rat::{Rat, Scalar};
use crate::rng::SeedStream;
use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Black,
    White,
}

/// An edge endpoint: a boundary label or an internal vertex id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum End {
    Boundary(u8),
    Internal(usize),
}

#[derive(Clone, Debug)]
pub struct Edge {
    pub a: End,
    pub b: End,
}

#[derive(Clone, Debug)]
pub struct PlabicGraph {
    /// Boundary labels in cyclic (sorted) order.
    pub ground: Vec<u8>,
    pub colors: Vec<Color>,
    pub edges: Vec<Edge>,
    /// Counterclockwise rotation: incident edge ids per internal vertex.
    pub rotations: Vec<Vec<usize>>,
}

/// A positroid given by its bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Positroid {
    pub k: usize,
    pub ground: Vec<u8>,
    pub bases: BTreeSet<Vec<u8>>,
}

impl Positroid {
    /// Matroid basis-exchange check, used on small instances in tests.
    pub fn satisfies_exchange(&self) -> bool {
        for x in &self.bases {
            for y in &self.bases {
                for e in x.iter().filter(|e| !y.contains(e)) {
                    let ok = y.iter().filter(|f| !x.contains(f)).any(|&f| {
                        let mut z: Vec<u8> =
                            x.iter().copied().filter(|v| v != e).collect();
                        z.push(f);
                        z.sort_unstable();
                        self.bases.contains(&z)
                    });
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn loops(&self) -> Vec<u8> {
        self.ground
            .iter()
            .copied()
            .filter(|g| self.bases.iter().all(|b| !b.contains(g)))
            .collect()
    }

    pub fn coloops(&self) -> Vec<u8> {
        self.ground
            .iter()
            .copied()
            .filter(|g| self.bases.iter().all(|b| b.contains(g)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "ground": self.ground,
            "bases": self.bases.iter().collect::<Vec<_>>(),
        })
    }
}

impl PlabicGraph {
    /// The k=0 cell: no internal structure at all.
    pub fn trivial(ground: Vec<u8>) -> PlabicGraph {
        PlabicGraph {
            ground,
            colors: vec![],
            edges: vec![],
            rotations: vec![],
        }
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    fn boundary_leg(&self, label: u8) -> Option<usize> {
        self.edges.iter().position(|e| {
            matches!(e.a, End::Boundary(l) if l == label)
                || matches!(e.b, End::Boundary(l) if l == label)
        })
    }

    fn add_vertex(&mut self, color: Color) -> usize {
        self.colors.push(color);
        self.rotations.push(vec![]);
        self.colors.len() - 1
    }

    /// Zero-dimensional cell graph: a white lollipop at each basis element and
    /// a black lollipop everywhere else.
    pub fn lollipop_base(ground: Vec<u8>, basis: &[u8]) -> PlabicGraph {
        let mut g = PlabicGraph::trivial(ground.clone());
        for &label in &ground {
            let color = if basis.contains(&label) {
                Color::White
            } else {
                Color::Black
            };
            let v = g.add_vertex(color);
            let e = g.edges.len();
            g.edges.push(Edge {
                a: End::Boundary(label),
                b: End::Internal(v),
            });
            g.rotations[v].push(e);
        }
        g
    }

    /// Adds a BCFW bridge between the legs at boundary labels `i` and `j`
    /// (`j` the next active label after `i` in cyclic order): a new white
    /// vertex on i's leg and a new black vertex on j's leg, joined by an edge
    /// hugging the boundary arc from i to j.
    pub fn add_bridge(&mut self, i: u8, j: u8) -> Result<()> {
        let ei = self
            .boundary_leg(i)
            .ok_or_else(|| Error::Other(format!("no leg at boundary {i}")))?;
        let ej = self
            .boundary_leg(j)
            .ok_or_else(|| Error::Other(format!("no leg at boundary {j}")))?;
        if ei == ej {
            return Err(Error::Other("bridge endpoints share a leg".into()));
        }
        let w = self.add_vertex(Color::White);
        let b = self.add_vertex(Color::Black);

        // Splice w into i's leg: the old edge keeps its id on the upper part.
        let e_down_i = self.edges.len();
        self.redirect_boundary_end(ei, i, End::Internal(w));
        self.edges.push(Edge {
            a: End::Boundary(i),
            b: End::Internal(w),
        });
        let e_down_j = self.edges.len();
        self.redirect_boundary_end(ej, j, End::Internal(b));
        self.edges.push(Edge {
            a: End::Boundary(j),
            b: End::Internal(b),
        });
        let e_bridge = self.edges.len();
        self.edges.push(Edge {
            a: End::Internal(w),
            b: End::Internal(b),
        });
        // ccw order derived from the bridge running along the boundary arc
        // from i toward j.
        self.rotations[w] = vec![e_down_i, e_bridge, ei];
        self.rotations[b] = vec![e_down_j, ej, e_bridge];
        Ok(())
    }

    fn redirect_boundary_end(&mut self, edge: usize, label: u8, new_end: End) {
        let e = &mut self.edges[edge];
        match e.a {
            End::Boundary(l) if l == label => e.a = new_end,
            _ => match e.b {
                End::Boundary(l) if l == label => e.b = new_end,
                _ => panic!("edge {edge} does not end at boundary {label}"),
            },
        }
    }

    /// Number of faces of the embedded graph (boundary circle included),
    /// with the outer face counted; errors if the rotation system does not
    /// describe a genus-zero embedding.
    fn face_count(&self) -> Result<usize> {
        let n = self.n();
        assert!(n >= 2, "ground set too small for an embedded graph");
        let vi = self.colors.len();
        // Augmented node ids: internal 0..vi, boundary vi..vi+n.
        let bnode = |p: usize| vi + p;
        let pos_of: BTreeMap<u8, usize> = self
            .ground
            .iter()
            .enumerate()
            .map(|(p, &l)| (l, p))
            .collect();
        // Augmented edges: graph edges then n boundary arcs p -> p+1.
        let mut aedges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|e| {
                let f = |end: &End| match end {
                    End::Boundary(l) => bnode(pos_of[l]),
                    End::Internal(v) => *v,
                };
                (f(&e.a), f(&e.b))
            })
            .collect();
        let arc0 = aedges.len();
        for p in 0..n {
            aedges.push((bnode(p), bnode((p + 1) % n)));
        }
        // Darts leaving each node in ccw order.
        let mut rot: Vec<Vec<usize>> = vec![vec![]; vi + n];
        let dart = |e: usize, from_a: bool| 2 * e + usize::from(!from_a);
        for (v, redges) in self.rotations.iter().enumerate() {
            for &e in redges {
                let from_a = aedges[e].0 == v;
                debug_assert!(from_a || aedges[e].1 == v);
                rot[v].push(dart(e, from_a));
            }
        }
        for p in 0..n {
            let label = self.ground[p];
            let next_arc = arc0 + p;
            let prev_arc = arc0 + (p + n - 1) % n;
            let mut r = vec![dart(next_arc, true)];
            if let Some(leg) = self.boundary_leg(label) {
                let from_a = aedges[leg].0 == bnode(p);
                r.push(dart(leg, from_a));
            }
            r.push(dart(prev_arc, false));
            rot[bnode(p)] = r;
        }
        let total_darts = 2 * aedges.len();
        let head = |d: usize| {
            let (a, b) = aedges[d / 2];
            if d % 2 == 0 {
                b
            } else {
                a
            }
        };
        let mut seen = vec![false; total_darts];
        let mut faces = 0usize;
        for start in 0..total_darts {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            loop {
                seen[d] = true;
                let v = head(d);
                let rev = d ^ 1;
                let pos = rot[v]
                    .iter()
                    .position(|&x| x == rev)
                    .expect("rotation system incomplete");
                d = rot[v][(pos + 1) % rot[v].len()];
                if d == start {
                    break;
                }
            }
        }
        let vtot = vi + n;
        let etot = aedges.len();
        if vtot + faces != etot + 2 {
            return Err(Error::Other(format!(
                "rotation system is not planar: V={vtot} E={etot} F={faces}"
            )));
        }
        Ok(faces)
    }

    /// Cell dimension: number of internal faces minus one.
    pub fn dimension(&self) -> Result<usize> {
        Ok(self.face_count()? - 2)
    }

    /// Enumerates all perfect orientations; returns per-edge directions
    /// (true = oriented a -> b).
    fn perfect_orientations(&self) -> Vec<Vec<bool>> {
        let m = self.edges.len();
        let mut incident: Vec<Vec<usize>> = vec![vec![]; self.colors.len()];
        for (e, edge) in self.edges.iter().enumerate() {
            if let End::Internal(v) = edge.a {
                incident[v].push(e);
            }
            if let End::Internal(v) = edge.b {
                incident[v].push(e);
            }
        }
        let mut dirs: Vec<Option<bool>> = vec![None; m];
        let mut out = Vec::new();
        // For vertex v, edge e: orientation value that makes e point OUT of v.
        let out_dir = |e: usize, v: usize, edges: &[Edge]| -> bool {
            matches!(edges[e].a, End::Internal(u) if u == v)
        };
        fn rec(
            v: usize,
            g: &PlabicGraph,
            incident: &[Vec<usize>],
            dirs: &mut Vec<Option<bool>>,
            out: &mut Vec<Vec<bool>>,
            out_dir: &dyn Fn(usize, usize, &[Edge]) -> bool,
        ) {
            if v == g.colors.len() {
                out.push(dirs.iter().map(|d| d.unwrap_or(true)).collect());
                return;
            }
            // Pick the special edge: unique outgoing for black, unique
            // incoming for white; all other incident edges get the opposite
            // direction at v.
            for &special in &incident[v] {
                let mut touched: Vec<(usize, bool)> = Vec::new();
                let mut ok = true;
                for &e in &incident[v] {
                    let toward_out = out_dir(e, v, &g.edges);
                    let want = match (g.colors[v], e == special) {
                        (Color::Black, true) | (Color::White, false) => toward_out,
                        _ => !toward_out,
                    };
                    match dirs[e] {
                        Some(d) if d != want => {
                            ok = false;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            dirs[e] = Some(want);
                            touched.push((e, want));
                        }
                    }
                }
                if ok {
                    rec(v + 1, g, incident, dirs, out, out_dir);
                }
                for (e, _) in touched {
                    dirs[e] = None;
                }
            }
        }
        rec(0, self, &incident, &mut dirs, &mut out, &out_dir);
        out
    }

    fn sources_of(&self, dirs: &[bool]) -> Vec<u8> {
        let mut src = Vec::new();
        for (e, edge) in self.edges.iter().enumerate() {
            // A boundary vertex is a source when its leg points into the graph.
            if let End::Boundary(l) = edge.a {
                if dirs[e] {
                    src.push(l);
                }
            }
            if let End::Boundary(l) = edge.b {
                if !dirs[e] {
                    src.push(l);
                }
            }
        }
        src.sort_unstable();
        src
    }

    fn orientation_is_acyclic(&self, dirs: &[bool]) -> bool {
        let nv = self.colors.len();
        let mut adj: Vec<Vec<usize>> = vec![vec![]; nv];
        for (e, edge) in self.edges.iter().enumerate() {
            if let (End::Internal(u), End::Internal(v)) = (edge.a, edge.b) {
                if dirs[e] {
                    adj[u].push(v);
                } else {
                    adj[v].push(u);
                }
            }
        }
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; nv];
        fn dfs(u: usize, adj: &[Vec<usize>], state: &mut [u8]) -> bool {
            state[u] = 1;
            for &v in &adj[u] {
                if state[v] == 1 {
                    return false;
                }
                if state[v] == 0 && !dfs(v, adj, state) {
                    return false;
                }
            }
            state[u] = 2;
            true
        }
        (0..nv).all(|u| state[u] != 0 || dfs(u, &adj, &mut state))
    }

    /// The positroid of the graph: all source sets of perfect orientations.
    pub fn positroid(&self) -> Result<Positroid> {
        let orientations = self.perfect_orientations();
        if orientations.is_empty() {
            return Err(Error::NotOrientable);
        }
        let mut bases = BTreeSet::new();
        let mut k = None;
        for o in &orientations {
            let s = self.sources_of(o);
            match k {
                None => k = Some(s.len()),
                Some(kk) => {
                    if kk != s.len() {
                        return Err(Error::Other(
                            "perfect orientations disagree on source count".into(),
                        ));
                    }
                }
            }
            bases.insert(s);
        }
        Ok(Positroid {
            k: k.unwrap(),
            ground: self.ground.clone(),
            bases,
        })
    }

    /// Cyclic shift of boundary labels: the label at cyclic position p moves
    /// to position p-1 (matching the matrix-level `cyc`, under which bases
    /// shift down by one step).
    pub fn cyc(&self) -> PlabicGraph {
        let m = self.ground.len();
        let relabel: BTreeMap<u8, u8> = (0..m)
            .map(|p| (self.ground[p], self.ground[(p + m - 1) % m]))
            .collect();
        self.relabeled(&relabel, false)
    }

    /// Reflection of boundary labels; mirrors the embedding.
    pub fn refl(&self) -> PlabicGraph {
        let m = self.ground.len();
        let relabel: BTreeMap<u8, u8> = (0..m)
            .map(|p| (self.ground[p], self.ground[m - 1 - p]))
            .collect();
        self.relabeled(&relabel, true)
    }

    fn relabeled(&self, map: &BTreeMap<u8, u8>, mirror: bool) -> PlabicGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let f = |end: &End| match end {
                    End::Boundary(l) => End::Boundary(map[l]),
                    End::Internal(v) => End::Internal(*v),
                };
                Edge {
                    a: f(&e.a),
                    b: f(&e.b),
                }
            })
            .collect();
        let rotations = self
            .rotations
            .iter()
            .map(|r| {
                let mut r = r.clone();
                if mirror {
                    r.reverse();
                }
                r
            })
            .collect();
        PlabicGraph {
            ground: self.ground.clone(),
            colors: self.colors.clone(),
            edges,
            rotations,
        }
    }

    /// Inserts boundary vertex `i` with a black lollipop, so `i` joins no
    /// basis (the zero-column operation at the graph level).
    pub fn pre(&self, i: u8) -> Result<PlabicGraph> {
        if self.ground.contains(&i) {
            return Err(Error::GroundMismatch(format!(
                "pre: label {i} already on the boundary"
            )));
        }
        let mut g = self.clone();
        let pos = g.ground.iter().position(|&x| x > i).unwrap_or(g.ground.len());
        g.ground.insert(pos, i);
        let v = g.add_vertex(Color::Black);
        let e = g.edges.len();
        g.edges.push(Edge {
            a: End::Boundary(i),
            b: End::Internal(v),
        });
        g.rotations[v].push(e);
        Ok(g)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "boundary": self.ground,
            "vertices": self.colors.iter().map(|c| match c {
                Color::Black => "black",
                Color::White => "white",
            }).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| {
                let f = |end: &End| match end {
                    End::Boundary(l) => json!({"boundary": l}),
                    End::Internal(v) => json!({"vertex": v}),
                };
                json!([f(&e.a), f(&e.b)])
            }).collect::<Vec<_>>(),
            "rotations": self.rotations,
        })
    }
}

/// Forward bridge action on bases: a bridge (white at i, black at j) adds
/// every (I \ {i}) ∪ {j} for I a basis with i ∈ I, j ∉ I.
fn bridge_forward(bases: &BTreeSet<Vec<u8>>, i: u8, j: u8) -> BTreeSet<Vec<u8>> {
    let mut out = bases.clone();
    for b in bases {
        if b.contains(&i) && !b.contains(&j) {
            let mut s: Vec<u8> = b.iter().copied().filter(|&x| x != i).collect();
            s.push(j);
            s.sort_unstable();
            out.insert(s);
        }
    }
    out
}

/// Rotated comparison key: the position of `x` in the ground order starting
/// at ground position `r`.
fn key_at(ground: &[u8], r: usize, x: u8) -> usize {
    let n = ground.len();
    let p = ground.iter().position(|&g| g == x).expect("label in ground");
    (p + n - r) % n
}

/// Grassmann necklace of a basis collection: I_r is the Gale-minimal basis in
/// the order starting at ground position r.
fn necklace_from_bases(ground: &[u8], bases: &BTreeSet<Vec<u8>>) -> Vec<Vec<u8>> {
    (0..ground.len())
        .map(|r| {
            bases
                .iter()
                .min_by_key(|b| {
                    let mut keys: Vec<usize> = b.iter().map(|&x| key_at(ground, r, x)).collect();
                    keys.sort_unstable();
                    keys
                })
                .unwrap()
                .clone()
        })
        .collect()
}

/// Decorated permutation: image map plus the set of coloop (white) fixed
/// points; errors when the basis collection is not a positroid.
fn perm_from_bases(
    ground: &[u8],
    bases: &BTreeSet<Vec<u8>>,
) -> Result<(BTreeMap<u8, u8>, BTreeSet<u8>)> {
    let n = ground.len();
    let necklace = necklace_from_bases(ground, bases);
    let mut map = BTreeMap::new();
    let mut coloops = BTreeSet::new();
    for r in 0..n {
        let g = ground[r];
        let cur = &necklace[r];
        let next = &necklace[(r + 1) % n];
        if !cur.contains(&g) {
            if next != cur {
                return Err(Error::NotRealizable(
                    "basis collection violates the necklace recursion".into(),
                ));
            }
            map.insert(g, g);
            continue;
        }
        let rest: BTreeSet<u8> = cur.iter().copied().filter(|&x| x != g).collect();
        let gained: Vec<u8> = next
            .iter()
            .copied()
            .filter(|x| !rest.contains(x))
            .collect();
        if gained.len() != 1 || next.len() != cur.len() {
            return Err(Error::NotRealizable(
                "basis collection violates the necklace recursion".into(),
            ));
        }
        map.insert(g, gained[0]);
        if gained[0] == g {
            coloops.insert(g);
        }
    }
    Ok((map, coloops))
}

/// Bases of the positroid of a decorated permutation: the anti-exceedance
/// necklace followed by the Gale-order envelope.
fn bases_of_perm(
    ground: &[u8],
    k: usize,
    map: &BTreeMap<u8, u8>,
    coloops: &BTreeSet<u8>,
) -> BTreeSet<Vec<u8>> {
    let n = ground.len();
    let inv: BTreeMap<u8, u8> = map.iter().map(|(&a, &b)| (b, a)).collect();
    if inv.len() != map.len() {
        return BTreeSet::new();
    }
    let mut necklace: Vec<Vec<u8>> = Vec::with_capacity(n);
    for r in 0..n {
        let mut i_r: Vec<u8> = ground
            .iter()
            .copied()
            .filter(|&x| {
                if map[&x] == x {
                    coloops.contains(&x)
                } else {
                    key_at(ground, r, inv[&x]) > key_at(ground, r, x)
                }
            })
            .collect();
        i_r.sort_unstable();
        necklace.push(i_r);
    }
    if necklace.iter().any(|i| i.len() != k) {
        return BTreeSet::new();
    }
    let mut out = BTreeSet::new();
    'next: for j in subsets_k(ground, k) {
        for r in 0..n {
            let mut jk: Vec<usize> = j.iter().map(|&x| key_at(ground, r, x)).collect();
            let mut ik: Vec<usize> = necklace[r].iter().map(|&x| key_at(ground, r, x)).collect();
            jk.sort_unstable();
            ik.sort_unstable();
            if jk.iter().zip(&ik).any(|(a, b)| a < b) {
                continue 'next;
            }
        }
        out.insert(j);
    }
    out
}

/// Peels a positroid down to a single basis, returning the bridge list in
/// peel order (outermost first) and the residual zero-dimensional basis.
/// Each peeled bridge (i, j) composes the decorated permutation with the
/// transposition swapping i and j.
fn peel_bridges(ground: &[u8], bases: &BTreeSet<Vec<u8>>) -> Option<(Vec<(u8, u8)>, Vec<u8>)> {
    let k = bases.iter().next()?.len();
    let (map, coloops) = perm_from_bases(ground, bases).ok()?;
    fn rec(
        ground: &[u8],
        k: usize,
        map: &BTreeMap<u8, u8>,
        coloops: &BTreeSet<u8>,
        bases: &BTreeSet<Vec<u8>>,
        bridges: &mut Vec<(u8, u8)>,
    ) -> Option<Vec<u8>> {
        let active: Vec<u8> = ground.iter().copied().filter(|x| map[x] != *x).collect();
        if active.is_empty() {
            return if bases.len() == 1 {
                bases.iter().next().cloned()
            } else {
                None
            };
        }
        for (idx, &i) in active.iter().enumerate() {
            let j = active[(idx + 1) % active.len()];
            if i == j {
                continue;
            }
            let mut map2 = map.clone();
            map2.insert(i, map[&j]);
            map2.insert(j, map[&i]);
            let mut coloops2: BTreeSet<u8> = coloops.clone();
            if map2[&i] == i {
                coloops2.insert(i);
            }
            if map2[&j] == j {
                coloops2.remove(&j);
            }
            let bases2 = bases_of_perm(ground, k, &map2, &coloops2);
            if bases2.is_empty() || bases2.len() >= bases.len() {
                continue;
            }
            if &bridge_forward(&bases2, i, j) != bases {
                continue;
            }
            bridges.push((i, j));
            if let Some(residual) = rec(ground, k, &map2, &coloops2, &bases2, bridges) {
                return Some(residual);
            }
            bridges.pop();
        }
        None
    }
    let mut bridges = Vec::new();
    let residual = rec(ground, k, &map, &coloops, bases, &mut bridges)?;
    Some((bridges, residual))
}

/// Builds a reduced plabic graph realizing the given positroid.
pub fn graph_from_positroid(p: &Positroid) -> Result<PlabicGraph> {
    let (bridges, base) = peel_bridges(&p.ground, &p.bases)
        .ok_or_else(|| Error::NotRealizable("no bridge decomposition found".into()))?;
    let mut g = PlabicGraph::lollipop_base(p.ground.clone(), &base);
    for &(i, j) in bridges.iter().rev() {
        g.add_bridge(i, j)?;
    }
    // Planarity and dimension cross-check.
    let dim = g.dimension()?;
    if dim != bridges.len() {
        return Err(Error::Other(format!(
            "bridge graph dimension {dim} != bridge count {}",
            bridges.len()
        )));
    }
    Ok(g)
}

/// Marker tuple B = (a, b, c, d, n) of a BCFW product, together with the
/// ambient ground set. Consecutiveness is relative to the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Markers {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
    pub n: u8,
}

impl Markers {
    pub fn tuple(&self) -> [u8; 5] {
        [self.a, self.b, self.c, self.d, self.n]
    }

    /// Validates against a ground set: b = succ(a), d = succ(c), n = succ(d)
    /// = max, and a < b < c < d < n.
    pub fn validate(&self, ground: &[u8]) -> Result<()> {
        let succ = |x: u8| -> Option<u8> {
            let p = ground.iter().position(|&g| g == x)?;
            ground.get(p + 1).copied()
        };
        let ok = ground.contains(&self.a)
            && succ(self.a) == Some(self.b)
            && succ(self.c) == Some(self.d)
            && succ(self.d) == Some(self.n)
            && ground.last() == Some(&self.n)
            && self.a < self.b
            && self.b < self.c
            && self.c < self.d
            && self.d < self.n;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMarkers(format!(
                "B={:?} invalid in ground {:?}",
                self.tuple(),
                ground
            )))
        }
    }

    /// N_L = {x ≤ a} ∪ {b, n}.
    pub fn left_ground(&self, ground: &[u8]) -> Vec<u8> {
        let mut g: Vec<u8> = ground.iter().copied().filter(|&x| x <= self.a).collect();
        g.push(self.b);
        g.push(self.n);
        g
    }

    /// N_R = {b ≤ x ≤ c} ∪ {d, n}.
    pub fn right_ground(&self, ground: &[u8]) -> Vec<u8> {
        let mut g: Vec<u8> = ground
            .iter()
            .copied()
            .filter(|&x| x >= self.b && x <= self.c)
            .collect();
        g.push(self.d);
        g.push(self.n);
        g
    }
}

/// The positroid of the BCFW product: bases are disjoint unions
/// I_L ∪ {x} ∪ I_R with I_L, I_R bases of the factors and x in B.
pub fn bcfw_product_positroid(
    left: &Positroid,
    right: &Positroid,
    markers: &Markers,
    ground: &[u8],
) -> Result<Positroid> {
    markers.validate(ground)?;
    let b_set = markers.tuple();
    let mut bases = BTreeSet::new();
    for il in &left.bases {
        for ir in &right.bases {
            if il.iter().any(|x| ir.contains(x)) {
                continue;
            }
            for &x in &b_set {
                if il.contains(&x) || ir.contains(&x) {
                    continue;
                }
                let mut j: Vec<u8> = il.iter().chain(ir.iter()).copied().collect();
                j.push(x);
                j.sort_unstable();
                bases.insert(j);
            }
        }
    }
    if bases.is_empty() {
        return Err(Error::InvalidMarkers(
            "BCFW product has no transversal bases".into(),
        ));
    }
    Ok(Positroid {
        k: left.k + right.k + 1,
        ground: ground.to_vec(),
        bases,
    })
}

/// BCFW product at the graph level. The factors' boundaries must equal
/// N_L and N_R of the marker tuple.
pub fn bcfw_product_graph(
    gl: &PlabicGraph,
    gr: &PlabicGraph,
    markers: &Markers,
    ground: &[u8],
) -> Result<PlabicGraph> {
    markers.validate(ground)?;
    if gl.ground != markers.left_ground(ground) {
        return Err(Error::GroundMismatch(format!(
            "left boundary {:?} != N_L {:?}",
            gl.ground,
            markers.left_ground(ground)
        )));
    }
    if gr.ground != markers.right_ground(ground) {
        return Err(Error::GroundMismatch(format!(
            "right boundary {:?} != N_R {:?}",
            gr.ground,
            markers.right_ground(ground)
        )));
    }
    let pl = gl.positroid()?;
    let pr = gr.positroid()?;
    let product = bcfw_product_positroid(&pl, &pr, markers, ground)?;
    graph_from_positroid(&product)
}

/// Flows of a fixed acyclic perfect orientation: for every k-subset J, the
/// list of vertex-disjoint path families from the source set to J, each
/// family recorded as the multiset of edges it uses.
#[derive(Clone, Debug)]
pub struct FlowTable {
    pub graph: PlabicGraph,
    pub positroid: Positroid,
    pub source_set: Vec<u8>,
    pub edge_count: usize,
    pub flows: BTreeMap<Vec<u8>, Vec<Vec<usize>>>,
}

impl FlowTable {
    pub fn build(graph: &PlabicGraph) -> Result<FlowTable> {
        let positroid = graph.positroid()?;
        let orientations = graph.perfect_orientations();
        let dirs = orientations
            .iter()
            .find(|o| graph.orientation_is_acyclic(o))
            .ok_or_else(|| Error::Other("no acyclic perfect orientation".into()))?
            .clone();
        let source_set = graph.sources_of(&dirs);

        // Directed adjacency on augmented nodes (internal then boundary).
        let vi = graph.colors.len();
        let bpos: BTreeMap<u8, usize> = graph
            .ground
            .iter()
            .enumerate()
            .map(|(p, &l)| (l, vi + p))
            .collect();
        let node = |end: &End| match end {
            End::Boundary(l) => bpos[l],
            End::Internal(v) => *v,
        };
        let total = vi + graph.ground.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![vec![]; total];
        for (e, edge) in graph.edges.iter().enumerate() {
            let (from, to) = if dirs[e] {
                (node(&edge.a), node(&edge.b))
            } else {
                (node(&edge.b), node(&edge.a))
            };
            adj[from].push((to, e));
        }

        let mut flows = BTreeMap::new();
        for j in subsets_k(&graph.ground, positroid.k) {
            let starts: Vec<usize> = source_set
                .iter()
                .filter(|s| !j.contains(s))
                .map(|s| bpos[s])
                .collect();
            let targets: BTreeSet<usize> = j
                .iter()
                .filter(|t| !source_set.contains(t))
                .map(|t| bpos[t])
                .collect();
            let mut used = vec![false; total];
            let mut found: Vec<Vec<usize>> = Vec::new();
            let mut current: Vec<usize> = Vec::new();
            let mut hit: BTreeSet<usize> = BTreeSet::new();
            Self::flows_rec(
                0, &starts, &targets, &adj, &mut used, &mut hit, &mut current, &mut found,
            );
            flows.insert(j, found);
        }
        Ok(FlowTable {
            graph: graph.clone(),
            positroid,
            source_set,
            edge_count: graph.edges.len(),
            flows,
        })
    }

    #[allow(clippy::too_many_arguments)]
    fn flows_rec(
        si: usize,
        starts: &[usize],
        targets: &BTreeSet<usize>,
        adj: &[Vec<(usize, usize)>],
        used: &mut Vec<bool>,
        hit: &mut BTreeSet<usize>,
        current: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if si == starts.len() {
            let mut f = current.clone();
            f.sort_unstable();
            found.push(f);
            return;
        }
        let s = starts[si];
        used[s] = true;
        Self::walk(s, si, starts, targets, adj, used, hit, current, found);
        used[s] = false;
    }

    #[allow(clippy::too_many_arguments)]
    fn walk(
        v: usize,
        si: usize,
        starts: &[usize],
        targets: &BTreeSet<usize>,
        adj: &[Vec<(usize, usize)>],
        used: &mut Vec<bool>,
        hit: &mut BTreeSet<usize>,
        current: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        if targets.contains(&v) && !hit.contains(&v) {
            hit.insert(v);
            Self::flows_rec(si + 1, starts, targets, adj, used, hit, current, found);
            hit.remove(&v);
            // Boundary targets have no outgoing edges, so the walk ends here.
            return;
        }
        for &(to, e) in &adj[v] {
            if used[to] {
                continue;
            }
            used[to] = true;
            current.push(e);
            Self::walk(to, si, starts, targets, adj, used, hit, current, found);
            current.pop();
            used[to] = false;
        }
    }

    /// Evaluates every Plücker coordinate as the flow polynomial at the given
    /// positive edge weights.
    pub fn eval_all<T: Scalar>(&self, weights: &[T]) -> BTreeMap<Vec<u8>, T> {
        assert_eq!(weights.len(), self.edge_count);
        let mut out = BTreeMap::new();
        for (j, fam) in &self.flows {
            let mut acc = T::zero();
            for flow in fam {
                let mut term = T::one();
                for &e in flow {
                    term = term * weights[e].clone();
                }
                acc = acc + term;
            }
            out.insert(j.clone(), acc);
        }
        out
    }

    pub fn random_weights(&self, rng: &mut SeedStream) -> Vec<Rat> {
        (0..self.edge_count).map(|_| rng.positive_rat(6)).collect()
    }

    /// A random point of the cell: positive weights, flow-formula Plückers,
    /// matrix reconstruction. Verifies support and basis positivity exactly.
    pub fn sample_point(&self, rng: &mut SeedStream) -> Result<(GrassmannPoint, PluckerVector)> {
        let w = self.random_weights(rng);
        self.point_from_weights(&w)
    }

    pub fn point_from_weights(&self, w: &[Rat]) -> Result<(GrassmannPoint, PluckerVector)> {
        let values = self.eval_all(w);
        for (j, v) in &values {
            let in_basis = self.positroid.bases.contains(j);
            if in_basis && v <= &Rat::zero() {
                return Err(Error::Other(format!("flow Plücker at {j:?} not positive")));
            }
            if !in_basis && !v.is_zero() {
                return Err(Error::Other(format!(
                    "flow Plücker at {j:?} nonzero off the positroid"
                )));
            }
        }
        let pv = PluckerVector {
            k: self.positroid.k,
            ground: self.graph.ground.clone(),
            values,
        };
        if self.positroid.k == 0 {
            return Ok((
                GrassmannPoint {
                    k: 0,
                    ground: self.graph.ground.clone(),
                    entries: vec![],
                },
                pv,
            ));
        }
        let point = matrix_from_pluckers(&pv)?;
        Ok((point, pv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    /// The dimension-4 rank-1 cell used everywhere: trivial ⋈ trivial.
    fn k1_cell(ground: Vec<u8>, markers: Markers) -> PlabicGraph {
        let gl = PlabicGraph::trivial(markers.left_ground(&ground));
        let gr = PlabicGraph::trivial(markers.right_ground(&ground));
        bcfw_product_graph(&gl, &gr, &markers, &ground).unwrap()
    }

    fn sex_markers() -> (Markers, Markers) {
        (
            Markers { a: 1, b: 2, c: 3, d: 4, n: 7 },
            Markers { a: 3, b: 4, c: 5, d: 6, n: 7 },
        )
    }

    /// S_ex in Gr(2,7): (trivial ⋈ trivial) ⋈ trivial.
    fn sex_graph() -> PlabicGraph {
        let (inner, outer) = sex_markers();
        let left = k1_cell(vec![1, 2, 3, 4, 7], inner);
        let right = PlabicGraph::trivial(vec![4, 5, 6, 7]);
        bcfw_product_graph(&left, &right, &outer, &[1, 2, 3, 4, 5, 6, 7]).unwrap()
    }

    #[test]
    fn trivial_graph_is_zero_dimensional() {
        let g = PlabicGraph::trivial(vec![1, 2, 3, 4]);
        assert_eq!(g.dimension().unwrap(), 0);
        let p = g.positroid().unwrap();
        assert_eq!(p.k, 0);
        assert_eq!(p.bases.len(), 1);
        assert!(p.bases.contains(&vec![]));
    }

    #[test]
    fn white_lollipop_is_a_coloop() {
        let g = PlabicGraph::lollipop_base(vec![1, 2, 3], &[2]);
        let p = g.positroid().unwrap();
        assert_eq!(p.k, 1);
        assert_eq!(p.bases.iter().collect::<Vec<_>>(), vec![&vec![2u8]]);
        assert_eq!(g.dimension().unwrap(), 0);
    }

    #[test]
    fn k1_cell_has_five_singleton_bases_and_dimension_four() {
        let markers = Markers { a: 1, b: 2, c: 4, d: 5, n: 6 };
        let g = k1_cell(vec![1, 2, 3, 4, 5, 6], markers);
        let p = g.positroid().unwrap();
        assert_eq!(p.k, 1);
        let expect: BTreeSet<Vec<u8>> =
            [[1u8], [2], [4], [5], [6]].iter().map(|s| s.to_vec()).collect();
        assert_eq!(p.bases, expect);
        assert_eq!(g.dimension().unwrap(), 4);
    }

    #[test]
    fn sex_positroid_and_dimension() {
        let g = sex_graph();
        assert_eq!(g.dimension().unwrap(), 8);
        let p = g.positroid().unwrap();
        assert_eq!(p.k, 2);
        // All 2-subsets of [7] except {1,2} and {5,6}.
        assert_eq!(p.bases.len(), 19);
        assert!(!p.bases.contains(&vec![1, 2]));
        assert!(!p.bases.contains(&vec![5, 6]));
        assert!(p.satisfies_exchange());
    }

    #[test]
    fn graph_from_positroid_round_trips() {
        let g = sex_graph();
        let p = g.positroid().unwrap();
        let h = graph_from_positroid(&p).unwrap();
        assert_eq!(h.positroid().unwrap(), p);
    }

    #[test]
    fn dimension_additivity() {
        let (inner, outer) = sex_markers();
        let left = k1_cell(vec![1, 2, 3, 4, 7], inner);
        let right = PlabicGraph::trivial(vec![4, 5, 6, 7]);
        let prod = bcfw_product_graph(&left, &right, &outer, &[1, 2, 3, 4, 5, 6, 7]).unwrap();
        assert_eq!(
            prod.dimension().unwrap(),
            left.dimension().unwrap() + right.dimension().unwrap() + 4
        );
    }

    #[test]
    fn product_rejects_bad_boundaries() {
        let (_, outer) = sex_markers();
        let left = PlabicGraph::trivial(vec![1, 2, 3]);
        let right = PlabicGraph::trivial(vec![4, 5, 6, 7]);
        assert!(matches!(
            bcfw_product_graph(&left, &right, &outer, &[1, 2, 3, 4, 5, 6, 7]),
            Err(Error::GroundMismatch(_))
        ));
    }

    #[test]
    fn cyc_shifts_bases() {
        let g = sex_graph();
        let p = g.positroid().unwrap();
        let shifted = g.cyc().positroid().unwrap();
        let expect: BTreeSet<Vec<u8>> = p
            .bases
            .iter()
            .map(|b| {
                let mut s: Vec<u8> =
                    b.iter().map(|&x| if x == 1 { 7 } else { x - 1 }).collect();
                s.sort_unstable();
                s
            })
            .collect();
        assert_eq!(shifted.bases, expect);
    }

    #[test]
    fn refl_is_an_involution_on_positroids() {
        let g = sex_graph();
        let p = g.positroid().unwrap();
        let r2 = g.refl().refl().positroid().unwrap();
        assert_eq!(p, r2);
        // refl itself reverses labels.
        let r = g.refl().positroid().unwrap();
        let expect: BTreeSet<Vec<u8>> = p
            .bases
            .iter()
            .map(|b| {
                let mut s: Vec<u8> = b.iter().map(|&x| 8 - x).collect();
                s.sort_unstable();
                s
            })
            .collect();
        assert_eq!(r.bases, expect);
    }

    #[test]
    fn pre_adds_a_loop() {
        let markers = Markers { a: 1, b: 2, c: 3, d: 4, n: 6 };
        let g = k1_cell(vec![1, 2, 3, 4, 6], markers);
        let h = g.pre(5).unwrap();
        let p = h.positroid().unwrap();
        assert!(p.loops().contains(&5));
        assert_eq!(h.dimension().unwrap(), g.dimension().unwrap());
        // The inserted label joins no basis, so the bases are unchanged.
        let orig = g.positroid().unwrap();
        assert_eq!(p.bases, orig.bases);
    }

    #[test]
    fn flow_sampling_matches_positroid_support() {
        let g = sex_graph();
        let table = FlowTable::build(&g).unwrap();
        let mut rng = SeedStream::new(42);
        for trial in 0..20 {
            let mut s = rng.derive(trial);
            let (point, pv) = table.sample_point(&mut s).unwrap();
            let support: BTreeSet<Vec<u8>> = pv.support().into_iter().collect();
            assert_eq!(support, table.positroid.bases);
            assert_eq!(point.k, 2);
            // Reconstructed matrix reproduces the flow Plückers projectively.
            assert!(point.pluckers().unwrap().proportional(&pv));
        }
    }

    #[test]
    fn k1_sample_has_five_same_sign_entries() {
        let markers = Markers { a: 2, b: 3, c: 5, d: 6, n: 7 };
        let g = k1_cell(vec![1, 2, 3, 4, 5, 6, 7], markers);
        let table = FlowTable::build(&g).unwrap();
        let mut rng = SeedStream::new(3);
        let (point, _) = table.sample_point(&mut rng).unwrap();
        let nonzero: Vec<u8> = point.ground.iter().enumerate()
            .filter(|(j, _)| !point.entries[0][*j].is_zero())
            .map(|(_, &l)| l)
            .collect();
        assert_eq!(nonzero, vec![2, 3, 5, 6, 7]);
        let signs: BTreeSet<i8> = point.entries[0]
            .iter()
            .filter(|v| !v.is_zero())
            .map(crate::rat::sign_of)
            .collect();
        assert_eq!(signs.len(), 1);
    }

    #[test]
    fn trivial_k0_sample_is_empty() {
        let g = PlabicGraph::trivial(vec![1, 2, 3, 4]);
        let table = FlowTable::build(&g).unwrap();
        let mut rng = SeedStream::new(1);
        let (point, pv) = table.sample_point(&mut rng).unwrap();
        assert_eq!(point.k, 0);
        assert_eq!(pv.values[&vec![]], rat_int(1));
    }
}
