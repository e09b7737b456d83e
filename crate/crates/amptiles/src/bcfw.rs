//! BCFW recipes (construction trees), chord diagrams, the standard recipe of
//! a diagram, chord relations, and enumeration of BCFW collections.

use crate::error::{Error, Result};
use crate::plabic::{bcfw_product_graph, Markers, PlabicGraph};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// A BCFW construction tree. Ground sets are always explicit; "consecutive"
/// in marker tuples is relative to the node's ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recipe {
    Trivial {
        ground: Vec<u8>,
    },
    Product {
        ground: Vec<u8>,
        markers: Markers,
        left: Box<Recipe>,
        right: Box<Recipe>,
    },
    Cyc {
        child: Box<Recipe>,
    },
    Refl {
        child: Box<Recipe>,
    },
    Pre {
        index: u8,
        child: Box<Recipe>,
    },
}

impl Recipe {
    pub fn ground(&self) -> Vec<u8> {
        match self {
            Recipe::Trivial { ground } => ground.clone(),
            Recipe::Product { ground, .. } => ground.clone(),
            Recipe::Cyc { child } | Recipe::Refl { child } => child.ground(),
            Recipe::Pre { index, child } => {
                let mut g = child.ground();
                let pos = g.iter().position(|&x| x > *index).unwrap_or(g.len());
                g.insert(pos, *index);
                g
            }
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Recipe::Trivial { .. } => 0,
            Recipe::Product { left, right, .. } => left.k() + right.k() + 1,
            Recipe::Cyc { child } | Recipe::Refl { child } | Recipe::Pre { child, .. } => child.k(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Recipe::Trivial { .. } => Ok(()),
            Recipe::Product {
                ground,
                markers,
                left,
                right,
            } => {
                markers.validate(ground)?;
                if left.ground() != markers.left_ground(ground) {
                    return Err(Error::InvalidRecipe(format!(
                        "left ground {:?} != N_L {:?}",
                        left.ground(),
                        markers.left_ground(ground)
                    )));
                }
                if right.ground() != markers.right_ground(ground) {
                    return Err(Error::InvalidRecipe(format!(
                        "right ground {:?} != N_R {:?}",
                        right.ground(),
                        markers.right_ground(ground)
                    )));
                }
                left.validate()?;
                right.validate()
            }
            Recipe::Cyc { child } | Recipe::Refl { child } => child.validate(),
            Recipe::Pre { index, child } => {
                if child.ground().contains(index) {
                    return Err(Error::InvalidRecipe(format!(
                        "pre index {index} already in ground"
                    )));
                }
                child.validate()
            }
        }
    }

    /// All marker tuples of Product nodes, outermost first.
    pub fn product_markers(&self) -> Vec<[u8; 5]> {
        match self {
            Recipe::Trivial { .. } => vec![],
            Recipe::Product { markers, left, right, .. } => {
                let mut out = vec![markers.tuple()];
                out.extend(left.product_markers());
                out.extend(right.product_markers());
                out
            }
            Recipe::Cyc { child } | Recipe::Refl { child } | Recipe::Pre { child, .. } => {
                child.product_markers()
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Recipe::Trivial { ground } => json!({"op": "trivial", "ground": ground}),
            Recipe::Product {
                ground,
                markers,
                left,
                right,
            } => json!({
                "op": "product",
                "ground": ground,
                "B": markers.tuple(),
                "left": left.to_json(),
                "right": right.to_json(),
            }),
            Recipe::Cyc { child } => json!({"op": "cyc", "child": child.to_json()}),
            Recipe::Refl { child } => json!({"op": "refl", "child": child.to_json()}),
            Recipe::Pre { index, child } => {
                json!({"op": "pre", "i": index, "child": child.to_json()})
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Recipe> {
        let op = v
            .get("op")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidRecipe("missing op".into()))?;
        let ground_of = |v: &Value, key: &str| -> Result<Vec<u8>> {
            v.get(key)
                .and_then(Value::as_array)
                .map(|a| {
                    a.iter()
                        .filter_map(Value::as_u64)
                        .map(|x| x as u8)
                        .collect()
                })
                .ok_or_else(|| Error::InvalidRecipe(format!("missing {key}")))
        };
        let child_of = |v: &Value| -> Result<Box<Recipe>> {
            Ok(Box::new(Recipe::from_json(v.get("child").ok_or_else(
                || Error::InvalidRecipe("missing child".into()),
            )?)?))
        };
        match op {
            "trivial" => Ok(Recipe::Trivial {
                ground: ground_of(v, "ground")?,
            }),
            "product" => {
                let b = ground_of(v, "B")?;
                if b.len() != 5 {
                    return Err(Error::InvalidRecipe("B must have 5 entries".into()));
                }
                Ok(Recipe::Product {
                    ground: ground_of(v, "ground")?,
                    markers: Markers {
                        a: b[0],
                        b: b[1],
                        c: b[2],
                        d: b[3],
                        n: b[4],
                    },
                    left: Box::new(Recipe::from_json(
                        v.get("left")
                            .ok_or_else(|| Error::InvalidRecipe("missing left".into()))?,
                    )?),
                    right: Box::new(Recipe::from_json(
                        v.get("right")
                            .ok_or_else(|| Error::InvalidRecipe("missing right".into()))?,
                    )?),
                })
            }
            "cyc" => Ok(Recipe::Cyc { child: child_of(v)? }),
            "refl" => Ok(Recipe::Refl { child: child_of(v)? }),
            "pre" => Ok(Recipe::Pre {
                index: v
                    .get("i")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| Error::InvalidRecipe("missing i".into()))?
                    as u8,
                child: child_of(v)?,
            }),
            other => Err(Error::InvalidRecipe(format!("unknown op {other}"))),
        }
    }
}

/// Builds the plabic graph of a recipe; the result always has dimension 4k.
pub fn build_cell(recipe: &Recipe) -> Result<PlabicGraph> {
    recipe.validate()?;
    build_cell_unchecked(recipe)
}

fn build_cell_unchecked(recipe: &Recipe) -> Result<PlabicGraph> {
    match recipe {
        Recipe::Trivial { ground } => Ok(PlabicGraph::trivial(ground.clone())),
        Recipe::Product {
            ground,
            markers,
            left,
            right,
        } => {
            let gl = build_cell_unchecked(left)?;
            let gr = build_cell_unchecked(right)?;
            bcfw_product_graph(&gl, &gr, markers, ground)
        }
        Recipe::Cyc { child } => Ok(build_cell_unchecked(child)?.cyc()),
        Recipe::Refl { child } => Ok(build_cell_unchecked(child)?.refl()),
        Recipe::Pre { index, child } => build_cell_unchecked(child)?.pre(*index),
    }
}

/// A chord (a, b, c, d) with b = a+1, d = c+1 on the marker line.
pub type Chord = [u8; 4];

/// A chord diagram: k noncrossing chords with distinct starts on markers
/// 1..n-1 of an n-marker line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    pub n: u8,
    pub chords: Vec<Chord>,
}

impl ChordDiagram {
    pub fn new(n: u8, mut chords: Vec<Chord>) -> Result<ChordDiagram> {
        chords.sort_unstable();
        let d = ChordDiagram { n, chords };
        d.validate()?;
        Ok(d)
    }

    pub fn k(&self) -> usize {
        self.chords.len()
    }

    pub fn validate(&self) -> Result<()> {
        for ch in &self.chords {
            let [a, b, c, d] = *ch;
            if !(1 <= a && b == a + 1 && b < c && d == c + 1 && d <= self.n - 1) {
                return Err(Error::InvalidChords(format!("bad chord {ch:?}")));
            }
        }
        for (i, x) in self.chords.iter().enumerate() {
            for y in self.chords.iter().skip(i + 1) {
                if x[0] == y[0] {
                    return Err(Error::InvalidChords(format!(
                        "chords {x:?} and {y:?} share a start"
                    )));
                }
                let crossing = |p: &Chord, q: &Chord| p[0] < q[0] && q[0] < p[2] && p[2] < q[2];
                if crossing(x, y) || crossing(y, x) {
                    return Err(Error::InvalidChords(format!(
                        "chords {x:?} and {y:?} cross"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "chords": self.chords})
    }

    pub fn from_json(v: &Value) -> Result<ChordDiagram> {
        let n = v
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidChords("missing n".into()))? as u8;
        let chords = v
            .get("chords")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidChords("missing chords".into()))?
            .iter()
            .map(|c| {
                let q: Vec<u8> = c
                    .as_array()
                    .map(|a| {
                        a.iter()
                            .filter_map(Value::as_u64)
                            .map(|x| x as u8)
                            .collect()
                    })
                    .unwrap_or_default();
                if q.len() == 4 {
                    Ok([q[0], q[1], q[2], q[3]])
                } else {
                    Err(Error::InvalidChords("chord must have 4 markers".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        ChordDiagram::new(n, chords)
    }
}

/// All chord diagrams on n markers with k chords, in lexicographic order.
pub fn enumerate_chords(n: u8, k: usize) -> Vec<ChordDiagram> {
    let mut all: Vec<Chord> = Vec::new();
    if n >= 4 {
        for a in 1..=n.saturating_sub(3) {
            for c in a + 2..=n - 2 {
                all.push([a, a + 1, c, c + 1]);
            }
        }
    }
    let compatible = |x: &Chord, y: &Chord| {
        x[0] != y[0]
            && !(x[0] < y[0] && y[0] < x[2] && x[2] < y[2])
            && !(y[0] < x[0] && x[0] < y[2] && y[2] < x[2])
    };
    let mut out = Vec::new();
    let mut cur: Vec<Chord> = Vec::new();
    fn rec(
        all: &[Chord],
        start: usize,
        k: usize,
        compatible: &dyn Fn(&Chord, &Chord) -> bool,
        cur: &mut Vec<Chord>,
        out: &mut Vec<Vec<Chord>>,
    ) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..all.len() {
            if cur.iter().all(|c| compatible(c, &all[i])) {
                cur.push(all[i]);
                rec(all, i + 1, k, compatible, cur, out);
                cur.pop();
            }
        }
    }
    let mut sets = Vec::new();
    rec(&all, 0, k, &compatible, &mut cur, &mut sets);
    for chords in sets {
        out.push(ChordDiagram { n, chords });
    }
    out
}

/// Pairwise relations between chords of a diagram.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ChordRelation {
    /// First chord is the (immediate) parent of the second.
    pub parent_of: bool,
    /// Ends lie in a common segment: c_i = c_j.
    pub same_end: bool,
    /// First ends in the segment where the second starts: c_i = a_j.
    pub head_to_tail: bool,
    /// Starts lie in consecutive segments.
    pub sticky: bool,
}

/// Index of the immediate parent of chord `i`, if any.
pub fn parent_of(d: &ChordDiagram, i: usize) -> Option<usize> {
    let ci = d.chords[i];
    d.chords
        .iter()
        .enumerate()
        .filter(|(j, cj)| *j != i && cj[0] < ci[0] && ci[2] <= cj[2])
        .max_by_key(|(_, cj)| cj[0])
        .map(|(j, _)| j)
}

pub fn chord_relations(d: &ChordDiagram) -> BTreeMap<(usize, usize), ChordRelation> {
    let mut out = BTreeMap::new();
    for i in 0..d.chords.len() {
        for j in 0..d.chords.len() {
            if i == j {
                continue;
            }
            let (x, y) = (d.chords[i], d.chords[j]);
            out.insert(
                (i, j),
                ChordRelation {
                    parent_of: parent_of(d, j) == Some(i),
                    same_end: x[2] == y[2],
                    head_to_tail: x[2] == y[0],
                    sticky: x[0].abs_diff(y[0]) == 1,
                },
            );
        }
    }
    out
}

fn penultimate(ground: &[u8]) -> u8 {
    ground[ground.len() - 2]
}

/// The standard BCFW recipe of a chord diagram: a product per chord (markers
/// B_i = (a_i, b_i, c_i, d_i, n)) and zero-column insertions at penultimate
/// indices for the untouched markers.
pub fn standard_recipe(d: &ChordDiagram) -> Result<Recipe> {
    d.validate()?;
    let ground: Vec<u8> = (1..=d.n).collect();
    let r = standard_on(&d.chords, &ground)?;
    r.validate()?;
    Ok(r)
}

fn standard_on(chords: &[Chord], ground: &[u8]) -> Result<Recipe> {
    if chords.is_empty() {
        return Ok(Recipe::Trivial {
            ground: ground.to_vec(),
        });
    }
    let n = *ground.last().unwrap();
    let m = penultimate(ground);
    let enders: Vec<&Chord> = chords.iter().filter(|c| c[3] == m).collect();
    if enders.is_empty() {
        let child_ground: Vec<u8> = ground.iter().copied().filter(|&x| x != m).collect();
        return Ok(Recipe::Pre {
            index: m,
            child: Box::new(standard_on(chords, &child_ground)?),
        });
    }
    let top = **enders.iter().min_by_key(|c| c[0]).unwrap();
    let markers = Markers {
        a: top[0],
        b: top[1],
        c: top[2],
        d: top[3],
        n,
    };
    let left_ground = markers.left_ground(ground);
    let right_ground = markers.right_ground(ground);
    let left_chords: Vec<Chord> = chords
        .iter()
        .copied()
        .filter(|c| c[2] <= top[0])
        .collect();
    let right_chords: Vec<Chord> = chords
        .iter()
        .copied()
        .filter(|c| *c != top && c[0] >= top[1])
        .collect();
    if left_chords.len() + right_chords.len() + 1 != chords.len() {
        return Err(Error::InvalidChords(format!(
            "chords do not split at {top:?}"
        )));
    }
    Ok(Recipe::Product {
        ground: ground.to_vec(),
        markers,
        left: Box::new(standard_on(&left_chords, &left_ground)?),
        right: Box::new(standard_on(&right_chords, &right_ground)?),
    })
}

/// Recipe for the top cell Gr_{k,N} with k = |N| - 4.
fn top_recipe(ground: &[u8]) -> Recipe {
    let k = ground.len() - 4;
    if k == 0 {
        return Recipe::Trivial {
            ground: ground.to_vec(),
        };
    }
    let m = ground.len();
    let markers = Markers {
        a: ground[0],
        b: ground[1],
        c: ground[m - 3],
        d: ground[m - 2],
        n: ground[m - 1],
    };
    let left = Recipe::Trivial {
        ground: markers.left_ground(ground),
    };
    let right = top_recipe(&markers.right_ground(ground));
    Recipe::Product {
        ground: ground.to_vec(),
        markers,
        left: Box::new(left),
        right: Box::new(right),
    }
}

/// How a BCFW collection is produced; non-standard variants exercise the
/// closure rule of the recursion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Standard,
    CycTop,
    ReflTop,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Standard => "standard",
            Strategy::CycTop => "cyc",
            Strategy::ReflTop => "refl",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BcfwCollection {
    pub n: u8,
    pub k: usize,
    pub strategy: Strategy,
    pub recipes: Vec<Recipe>,
    pub provenance: Value,
}

/// One BCFW collection of cells for (n, k) following the recursion, with the
/// chosen closure wrap applied on top.
pub fn collection(n: u8, k: usize, strategy: Strategy) -> Result<BcfwCollection> {
    if (k + 4) > n as usize {
        return Err(Error::InvalidRecipe(format!("need n >= k+4, got ({n},{k})")));
    }
    let ground: Vec<u8> = (1..=n).collect();
    let (mut recipes, provenance) = collection_on(&ground, k)?;
    match strategy {
        Strategy::Standard => {}
        Strategy::CycTop => {
            recipes = recipes
                .into_iter()
                .map(|r| Recipe::Cyc { child: Box::new(r) })
                .collect();
        }
        Strategy::ReflTop => {
            recipes = recipes
                .into_iter()
                .map(|r| Recipe::Refl { child: Box::new(r) })
                .collect();
        }
    }
    Ok(BcfwCollection {
        n,
        k,
        strategy,
        recipes,
        provenance: json!({"strategy": strategy.name(), "tree": provenance}),
    })
}

fn collection_on(ground: &[u8], k: usize) -> Result<(Vec<Recipe>, Value)> {
    let m = ground.len();
    if k == 0 {
        return Ok((
            vec![Recipe::Trivial {
                ground: ground.to_vec(),
            }],
            json!("trivial"),
        ));
    }
    if k == m - 4 {
        return Ok((vec![top_recipe(ground)], json!("top-cell")));
    }
    let mut recipes = Vec::new();
    let mut prov = Vec::new();
    // T_pre: remove the penultimate index d, tile the smaller problem, and
    // reinsert d as a zero column.
    let d = penultimate(ground);
    let sub_ground: Vec<u8> = ground.iter().copied().filter(|&x| x != d).collect();
    let (sub, sub_prov) = collection_on(&sub_ground, k)?;
    for r in sub {
        recipes.push(Recipe::Pre {
            index: d,
            child: Box::new(r),
        });
    }
    prov.push(json!({"case": "pre", "d": d, "sub": sub_prov}));
    // Products over admissible splits (k_L, k_R, b).
    for k_l in 0..k {
        let k_r = k - 1 - k_l;
        let pos_min = if k_l == 0 { 2 } else { k_l + 3 };
        let pos_max = m.saturating_sub(3 + k_r);
        for p in pos_min..=pos_max {
            let markers = Markers {
                a: ground[p - 2],
                b: ground[p - 1],
                c: ground[m - 3],
                d: ground[m - 2],
                n: ground[m - 1],
            };
            let left_ground = markers.left_ground(ground);
            let right_ground = markers.right_ground(ground);
            if left_ground.len() < k_l + 4 && k_l > 0 {
                continue;
            }
            if right_ground.len() < k_r + 4 && k_r > 0 {
                continue;
            }
            let (lefts, lp) = collection_on(&left_ground, k_l)?;
            let (rights, rp) = collection_on(&right_ground, k_r)?;
            for l in &lefts {
                for r in &rights {
                    recipes.push(Recipe::Product {
                        ground: ground.to_vec(),
                        markers: markers.clone(),
                        left: Box::new(l.clone()),
                        right: Box::new(r.clone()),
                    });
                }
            }
            prov.push(json!({
                "case": "product", "b": markers.b, "kL": k_l, "kR": k_r,
                "left": lp, "right": rp,
            }));
        }
    }
    Ok((recipes, json!(prov)))
}

/// Enumerates BCFW collections (standard plus closure-rule variants), up to
/// `budget` collections. The second return value flags truncation.
pub fn enumerate_collections(n: u8, k: usize, budget: usize) -> Result<(Vec<BcfwCollection>, bool)> {
    let mut out = Vec::new();
    for strategy in [Strategy::Standard, Strategy::CycTop, Strategy::ReflTop] {
        if out.len() >= budget {
            return Ok((out, true));
        }
        out.push(collection(n, k, strategy)?);
    }
    Ok((out, false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedStream;
    use std::collections::BTreeSet;

    #[test]
    fn chord_counts_for_small_cases() {
        // Brute-force oracle lives in enumerate_chords itself (exhaustive
        // subset DFS); cross-check counts and the explicit (6,1) list.
        let d61 = enumerate_chords(6, 1);
        let quads: Vec<Chord> = d61.iter().map(|d| d.chords[0]).collect();
        assert_eq!(quads, vec![[1, 2, 3, 4], [1, 2, 4, 5], [2, 3, 4, 5]]);
        assert_eq!(enumerate_chords(7, 1).len(), 6);
        assert_eq!(enumerate_chords(6, 2).len(), 1);
        assert_eq!(enumerate_chords(7, 2).len(), 6);
        assert_eq!(enumerate_chords(8, 2).len(), 20);
    }

    #[test]
    fn every_enumerated_diagram_revalidates() {
        for (n, k) in [(6u8, 1usize), (7, 2), (8, 2), (9, 3)] {
            for d in enumerate_chords(n, k) {
                assert!(d.validate().is_ok());
                for pair in d.chords.windows(2) {
                    assert!(pair[0] <= pair[1], "canonical order");
                }
            }
        }
    }

    #[test]
    fn paper_scale_diagram_is_enumerated() {
        let d = ChordDiagram::new(
            15,
            vec![
                [3, 4, 5, 6],
                [5, 6, 8, 9],
                [1, 2, 8, 9],
                [10, 11, 12, 13],
                [9, 10, 12, 13],
                [8, 9, 13, 14],
            ],
        )
        .unwrap();
        let all = enumerate_chords(15, 6);
        assert!(all.contains(&d));
    }

    /// Chords of the running n=15 example, indexed as in the source figure
    /// (label i -> chords[i-1]).
    pub fn example_diagram() -> (ChordDiagram, Vec<Chord>) {
        let labeled = vec![
            [3u8, 4, 5, 6],
            [5, 6, 8, 9],
            [1, 2, 8, 9],
            [10, 11, 12, 13],
            [9, 10, 12, 13],
            [8, 9, 13, 14],
        ];
        (ChordDiagram::new(15, labeled.clone()).unwrap(), labeled)
    }

    #[test]
    fn relations_on_the_example_diagram() {
        let (d, labeled) = example_diagram();
        let idx = |c: Chord| d.chords.iter().position(|&x| x == c).unwrap();
        let i = |lab: usize| idx(labeled[lab - 1]);
        // D_4 has parent D_5; D_5 has parent D_6; D_1, D_2 have parent D_3.
        assert_eq!(parent_of(&d, i(4)), Some(i(5)));
        assert_eq!(parent_of(&d, i(5)), Some(i(6)));
        assert_eq!(parent_of(&d, i(1)), Some(i(3)));
        assert_eq!(parent_of(&d, i(2)), Some(i(3)));
        assert_eq!(parent_of(&d, i(3)), None);
        let rel = chord_relations(&d);
        // Same-end: D_2 and D_3 end in (8,9); D_4 and D_5 end in (12,13).
        assert!(rel[&(i(2), i(3))].same_end);
        assert!(rel[&(i(4), i(5))].same_end);
        assert!(!rel[&(i(1), i(2))].same_end);
        // Head-to-tail: D_1 ends where D_2 starts; D_3 ends where D_6 starts.
        assert!(rel[&(i(1), i(2))].head_to_tail);
        assert!(rel[&(i(3), i(6))].head_to_tail);
        assert!(!rel[&(i(1), i(3))].head_to_tail);
        // Sticky: D_5/D_6 and D_4/D_5 start in consecutive segments.
        assert!(rel[&(i(5), i(6))].sticky);
        assert!(rel[&(i(4), i(5))].sticky);
        assert!(!rel[&(i(2), i(6))].sticky);
    }

    #[test]
    fn single_chord_has_no_relations() {
        let d = ChordDiagram::new(6, vec![[1, 2, 3, 4]]).unwrap();
        assert!(chord_relations(&d).is_empty());
        assert_eq!(parent_of(&d, 0), None);
    }

    #[test]
    fn sex_recipe_from_chords() {
        let d = ChordDiagram::new(7, vec![[1, 2, 3, 4], [3, 4, 5, 6]]).unwrap();
        let r = standard_recipe(&d).unwrap();
        assert_eq!(r.product_markers(), vec![[3, 4, 5, 6, 7], [1, 2, 3, 4, 7]]);
        let g = build_cell(&r).unwrap();
        assert_eq!(g.dimension().unwrap(), 8);
        assert_eq!(g.positroid().unwrap().bases.len(), 19);
    }

    #[test]
    fn standard_recipes_have_dimension_4k_and_distinct_positroids() {
        for (n, k) in [(6u8, 1usize), (7, 1), (7, 2), (8, 2)] {
            let mut seen = BTreeSet::new();
            for d in enumerate_chords(n, k) {
                let r = standard_recipe(&d).unwrap();
                assert_eq!(r.k(), k);
                let g = build_cell(&r).unwrap();
                assert_eq!(g.dimension().unwrap(), 4 * k, "dim 4k fails for {d:?}");
                let p = g.positroid().unwrap();
                assert!(seen.insert(p.bases), "positroid collision for {d:?}");
            }
        }
    }

    #[test]
    fn k1_standard_recipe_supports() {
        // A single chord (a, a+1, c, c+1) yields the rank-1 cell with
        // singleton bases at a, b, c, d, n.
        let d = ChordDiagram::new(7, vec![[2, 3, 4, 5]]).unwrap();
        let r = standard_recipe(&d).unwrap();
        let g = build_cell(&r).unwrap();
        let p = g.positroid().unwrap();
        let expect: BTreeSet<Vec<u8>> =
            [[2u8], [3], [4], [5], [7]].iter().map(|s| s.to_vec()).collect();
        assert_eq!(p.bases, expect);
    }

    #[test]
    fn collections_match_chord_counts() {
        for (n, k) in [(6u8, 1usize), (7, 1), (7, 2), (8, 1), (8, 2), (9, 3)] {
            let coll = collection(n, k, Strategy::Standard).unwrap();
            assert_eq!(
                coll.recipes.len(),
                enumerate_chords(n, k).len(),
                "collection size != chord count at ({n},{k})"
            );
        }
    }

    #[test]
    fn standard_collection_cells_match_standard_recipe_cells() {
        for (n, k) in [(6u8, 1usize), (7, 2)] {
            let coll = collection(n, k, Strategy::Standard).unwrap();
            let from_coll: BTreeSet<_> = coll
                .recipes
                .iter()
                .map(|r| build_cell(r).unwrap().positroid().unwrap().bases)
                .collect();
            let from_chords: BTreeSet<_> = enumerate_chords(n, k)
                .iter()
                .map(|d| {
                    build_cell(&standard_recipe(d).unwrap())
                        .unwrap()
                        .positroid()
                        .unwrap()
                        .bases
                })
                .collect();
            assert_eq!(from_coll, from_chords);
        }
    }

    #[test]
    fn top_cell_base_case() {
        let coll = collection(6, 2, Strategy::Standard).unwrap();
        assert_eq!(coll.recipes.len(), 1);
        let g = build_cell(&coll.recipes[0]).unwrap();
        assert_eq!(g.dimension().unwrap(), 8);
        // Top cell: every 2-subset is a basis.
        assert_eq!(g.positroid().unwrap().bases.len(), 15);
    }

    #[test]
    fn wrapped_collections_have_4k_cells() {
        for strategy in [Strategy::CycTop, Strategy::ReflTop] {
            let coll = collection(6, 1, strategy).unwrap();
            assert_eq!(coll.recipes.len(), 3);
            for r in &coll.recipes {
                let g = build_cell(r).unwrap();
                assert_eq!(g.dimension().unwrap(), 4);
            }
        }
    }

    #[test]
    fn enumerate_collections_budget() {
        let (colls, truncated) = enumerate_collections(6, 1, 2).unwrap();
        assert_eq!(colls.len(), 2);
        assert!(truncated);
        let (colls, truncated) = enumerate_collections(6, 1, 10).unwrap();
        assert_eq!(colls.len(), 3);
        assert!(!truncated);
    }

    #[test]
    fn random_recipes_are_4k_dimensional() {
        // 50 random standard recipes with random wraps, n <= 9.
        let mut rng = SeedStream::new(99);
        let mut count = 0;
        'outer: for trial in 0..200 {
            let mut s = rng.derive(trial);
            let n = 6 + (s.usize_below(4) as u8);
            let kmax = (n as usize - 4).min(3);
            let k = 1 + s.usize_below(kmax);
            let diagrams = enumerate_chords(n, k);
            if diagrams.is_empty() {
                continue;
            }
            let d = &diagrams[s.usize_below(diagrams.len())];
            let mut r = standard_recipe(d).unwrap();
            for _ in 0..s.usize_below(3) {
                r = match s.usize_below(2) {
                    0 => Recipe::Cyc { child: Box::new(r) },
                    _ => Recipe::Refl { child: Box::new(r) },
                };
            }
            let g = build_cell(&r).unwrap();
            assert_eq!(g.dimension().unwrap(), 4 * k);
            count += 1;
            if count >= 50 {
                break 'outer;
            }
        }
        assert!(count >= 50);
    }

    #[test]
    fn recipe_json_roundtrip() {
        let d = ChordDiagram::new(7, vec![[1, 2, 3, 4], [3, 4, 5, 6]]).unwrap();
        let r = standard_recipe(&d).unwrap();
        let v = r.to_json();
        assert_eq!(Recipe::from_json(&v).unwrap(), r);
    }

    #[test]
    fn invalid_recipes_rejected() {
        let bad = Recipe::Product {
            ground: (1..=7).collect(),
            markers: Markers { a: 2, b: 3, c: 4, d: 5, n: 7 },
            left: Box::new(Recipe::Trivial { ground: vec![1, 2, 3, 7] }),
            right: Box::new(Recipe::Trivial { ground: vec![3, 4, 5, 7] }),
        };
        assert!(bad.validate().is_err());
    }
}
