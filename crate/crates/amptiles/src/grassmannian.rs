//! Points of the Grassmannian over the rationals: Plücker coordinates,
//! positivity tests, the cyclic/reflection/zero-column operations, twistor
//! coordinates, and totally positive sampling.

use crate::error::{Error, Result};
use crate::linalg::{det, mat_mul, rank, Mat};
use crate::rat::{rat_to_string, sign_of, Rat, Scalar};
use crate::rng::SeedStream;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use std::collections::BTreeMap;

/// All sorted k-subsets of `ground`.
pub fn subsets_k(ground: &[u8], k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(ground: &[u8], k: usize, start: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=ground.len().saturating_sub(need) {
            cur.push(ground[i]);
            rec(ground, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(ground, k, 0, &mut cur, &mut out);
    out
}

/// Sorts `idx`, returning (sorted, permutation sign); sign 0 on repeats.
pub fn sort_with_sign(idx: &[u8]) -> (Vec<u8>, i8) {
    let mut v = idx.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return (v, 0);
        }
    }
    (v, sign)
}

/// A point of Gr(k, N) as an explicit full-rank k x |N| rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct GrassmannPoint {
    pub k: usize,
    pub ground: Vec<u8>,
    pub entries: Mat<Rat>,
}

/// The Plücker vector of a point: one rational per sorted k-subset, defined up
/// to a single global scale.
#[derive(Clone, Debug, PartialEq)]
pub struct PluckerVector {
    pub k: usize,
    pub ground: Vec<u8>,
    pub values: BTreeMap<Vec<u8>, Rat>,
}

/// Totally positive n x (k+4) matrix defining the amplituhedron map.
#[derive(Clone, Debug, PartialEq)]
pub struct ZMatrix {
    pub n: usize,
    pub k: usize,
    pub entries: Mat<Rat>,
}

/// Twistor coordinates of a point Y in Gr(k, k+4) with respect to Z, indexed by
/// sorted 4-subsets of the ground set; defined up to global scale.
#[derive(Clone, Debug, PartialEq)]
pub struct TwistorVector {
    pub ground: Vec<u8>,
    pub values: BTreeMap<Vec<u8>, Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PositivityClass {
    Positive,
    Nonnegative,
    Neither,
}

impl GrassmannPoint {
    pub fn new(k: usize, ground: Vec<u8>, entries: Mat<Rat>) -> Result<Self> {
        let p = GrassmannPoint { k, ground, entries };
        p.check_rank()?;
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    fn check_rank(&self) -> Result<()> {
        if self.entries.len() != self.k || self.entries.iter().any(|r| r.len() != self.n()) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} x {} matrix",
                self.k,
                self.n()
            )));
        }
        if rank(&self.entries) != self.k {
            return Err(Error::RankDeficient);
        }
        Ok(())
    }

    fn col_position(&self, label: u8) -> Option<usize> {
        self.ground.iter().position(|&g| g == label)
    }

    /// Column minor on the sorted ground-set labels `cols`.
    pub fn minor(&self, cols: &[u8]) -> Rat {
        assert_eq!(cols.len(), self.k);
        let idx: Vec<usize> = cols
            .iter()
            .map(|&c| self.col_position(c).expect("column label not in ground set"))
            .collect();
        let sub: Mat<Rat> = (0..self.k)
            .map(|r| idx.iter().map(|&j| self.entries[r][j].clone()).collect())
            .collect();
        det(&sub)
    }

    /// All Plücker coordinates.
    pub fn pluckers(&self) -> Result<PluckerVector> {
        self.check_rank()?;
        let mut values = BTreeMap::new();
        for s in subsets_k(&self.ground, self.k) {
            let v = self.minor(&s);
            values.insert(s, v);
        }
        Ok(PluckerVector {
            k: self.k,
            ground: self.ground.clone(),
            values,
        })
    }

    /// Classifies sign behaviour of the Plücker vector up to a global flip.
    pub fn positivity_class(&self) -> Result<PositivityClass> {
        let pv = self.pluckers()?;
        let mut pos = 0usize;
        let mut neg = 0usize;
        let mut zero = 0usize;
        for v in pv.values.values() {
            match sign_of(v) {
                1 => pos += 1,
                -1 => neg += 1,
                _ => zero += 1,
            }
        }
        Ok(if pos > 0 && neg > 0 {
            PositivityClass::Neither
        } else if zero == 0 {
            PositivityClass::Positive
        } else {
            PositivityClass::Nonnegative
        })
    }

    /// Cyclic shift: positionally sends column 1 to the back with a
    /// (-1)^(k-1) twist, i.e. new col_i = old col_{i+1}, new col_n = ±old col_1.
    pub fn cyc(&self) -> GrassmannPoint {
        let n = self.n();
        let twist = if (self.k + 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
        let entries: Mat<Rat> = (0..self.k)
            .map(|r| {
                (0..n)
                    .map(|j| {
                        if j + 1 < n {
                            self.entries[r][j + 1].clone()
                        } else {
                            twist.clone() * self.entries[r][0].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        GrassmannPoint {
            k: self.k,
            ground: self.ground.clone(),
            entries,
        }
    }

    /// Reflection: reverses the columns and rescales the top row by
    /// (-1)^(k choose 2).
    pub fn refl(&self) -> GrassmannPoint {
        let n = self.n();
        let flip = if (self.k * (self.k.saturating_sub(1)) / 2) % 2 == 0 {
            Rat::one()
        } else {
            -Rat::one()
        };
        let entries: Mat<Rat> = (0..self.k)
            .map(|r| {
                (0..n)
                    .map(|j| {
                        let v = self.entries[r][n - 1 - j].clone();
                        if r == 0 {
                            flip.clone() * v
                        } else {
                            v
                        }
                    })
                    .collect()
            })
            .collect();
        GrassmannPoint {
            k: self.k,
            ground: self.ground.clone(),
            entries,
        }
    }

    /// Adds a zero column labelled `i` (which must not be in the ground set).
    pub fn pre(&self, i: u8) -> Result<GrassmannPoint> {
        if self.ground.contains(&i) {
            return Err(Error::GroundMismatch(format!(
                "pre: index {i} already in ground set"
            )));
        }
        let pos = self.ground.iter().position(|&g| g > i).unwrap_or(self.n());
        let mut ground = self.ground.clone();
        ground.insert(pos, i);
        let entries: Mat<Rat> = self
            .entries
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.insert(pos, Rat::zero());
                r
            })
            .collect();
        Ok(GrassmannPoint {
            k: self.k,
            ground,
            entries,
        })
    }

    /// Deletes the column labelled `i`.
    pub fn delete_column(&self, i: u8) -> Result<GrassmannPoint> {
        let pos = self
            .col_position(i)
            .ok_or_else(|| Error::GroundMismatch(format!("column {i} not present")))?;
        let mut ground = self.ground.clone();
        ground.remove(pos);
        let entries: Mat<Rat> = self
            .entries
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.remove(pos);
                r
            })
            .collect();
        Ok(GrassmannPoint {
            k: self.k,
            ground,
            entries,
        })
    }

    /// Row-span equality, tested projectively on Plücker vectors.
    pub fn same_point(&self, other: &GrassmannPoint) -> bool {
        if self.k != other.k || self.ground != other.ground {
            return false;
        }
        let (a, b) = (self.pluckers(), other.pluckers());
        match (a, b) {
            (Ok(a), Ok(b)) => a.proportional(&b),
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "ground": self.ground,
            "entries": self.entries.iter().map(|row| {
                row.iter().map(rat_to_string).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

impl PluckerVector {
    /// Antisymmetric lookup: unsorted/repeated index tuples get the
    /// permutation sign (0 on repeats).
    pub fn get_signed(&self, idx: &[u8]) -> Rat {
        let (sorted, sign) = sort_with_sign(idx);
        if sign == 0 {
            return Rat::zero();
        }
        let v = self.values.get(&sorted).cloned().unwrap_or_else(Rat::zero);
        if sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Keys with nonzero value.
    pub fn support(&self) -> Vec<Vec<u8>> {
        self.values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Projective equality by exact cross-multiplication.
    pub fn proportional(&self, other: &PluckerVector) -> bool {
        if self.k != other.k || self.ground != other.ground {
            return false;
        }
        let Some((key0, a0)) = self.values.iter().find(|(_, v)| !v.is_zero()) else {
            return false;
        };
        let b0 = match other.values.get(key0) {
            Some(v) if !v.is_zero() => v,
            _ => return false,
        };
        self.values.iter().all(|(key, a)| {
            let b = other.values.get(key).cloned().unwrap_or_else(Rat::zero);
            a.clone() * b0.clone() == b * a0.clone()
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "ground": self.ground,
            "values": self.values.iter().map(|(i, v)| json!({
                "I": i,
                "v": rat_to_string(v),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Reconstructs a matrix representative from a realizable Plücker vector
/// (chart chosen at the lexicographically first nonvanishing coordinate).
pub fn matrix_from_pluckers(pv: &PluckerVector) -> Result<GrassmannPoint> {
    if pv.k == 0 {
        return Ok(GrassmannPoint {
            k: 0,
            ground: pv.ground.clone(),
            entries: vec![],
        });
    }
    let base = pv
        .values
        .iter()
        .find(|(_, v)| !v.is_zero())
        .map(|(k, _)| k.clone())
        .ok_or_else(|| Error::NotRealizable("no nonzero Plücker coordinate".into()))?;
    let denom = pv.values[&base].clone();
    let k = pv.k;
    let n = pv.ground.len();
    let mut entries = vec![vec![Rat::zero(); n]; k];
    for (r, &label) in base.iter().enumerate() {
        let pos = pv.ground.iter().position(|&g| g == label).unwrap();
        entries[r][pos] = Rat::one();
    }
    for (jpos, &j) in pv.ground.iter().enumerate() {
        if base.contains(&j) {
            continue;
        }
        for r in 0..k {
            // Sorted key (base \ {base[r]}) ∪ {j} and the sign of the row
            // permutation that realizes the chart minor.
            let mut key: Vec<u8> = base
                .iter()
                .enumerate()
                .filter(|(s, _)| *s != r)
                .map(|(_, &x)| x)
                .collect();
            key.push(j);
            let (sorted, _) = sort_with_sign(&key);
            // Permutation: row s (s != r) sits at the position of base[s] in
            // `sorted`; row r at the position of j.
            let mut perm: Vec<usize> = Vec::with_capacity(k);
            for (s, &x) in base.iter().enumerate() {
                if s == r {
                    perm.push(sorted.iter().position(|&y| y == j).unwrap());
                } else {
                    perm.push(sorted.iter().position(|&y| y == x).unwrap());
                }
            }
            let mut inv = 0usize;
            for a in 0..k {
                for b in a + 1..k {
                    if perm[a] > perm[b] {
                        inv += 1;
                    }
                }
            }
            let sign = if inv % 2 == 0 { Rat::one() } else { -Rat::one() };
            let val = pv.values.get(&sorted).cloned().unwrap_or_else(Rat::zero);
            entries[r][jpos] = sign * val / denom.clone();
        }
    }
    let point = GrassmannPoint {
        k,
        ground: pv.ground.clone(),
        entries,
    };
    let back = point.pluckers()?;
    if !back.proportional(pv) {
        return Err(Error::NotRealizable(
            "Plücker vector fails reconstruction round-trip".into(),
        ));
    }
    Ok(point)
}

impl ZMatrix {
    pub fn new(n: usize, k: usize, entries: Mat<Rat>) -> Result<Self> {
        if entries.len() != n || entries.iter().any(|r| r.len() != k + 4) {
            return Err(Error::DimensionMismatch(format!(
                "Z must be {} x {}",
                n,
                k + 4
            )));
        }
        Ok(ZMatrix { n, k, entries })
    }

    /// Checks that every maximal minor is strictly positive.
    pub fn is_totally_positive(&self) -> bool {
        let labels: Vec<u8> = (1..=self.n as u8).collect();
        subsets_k(&labels, self.k + 4).iter().all(|rows| {
            let sub: Mat<Rat> = rows
                .iter()
                .map(|&r| self.entries[(r - 1) as usize].clone())
                .collect();
            sign_of(&det(&sub)) == 1
        })
    }

    /// Maximal minor on 1-based row labels (must be sorted).
    pub fn row_minor(&self, rows: &[u8]) -> Rat {
        let sub: Mat<Rat> = rows
            .iter()
            .map(|&r| self.entries[(r - 1) as usize].clone())
            .collect();
        det(&sub)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "k": self.k,
            "entries": self.entries.iter().map(|row| {
                row.iter().map(rat_to_string).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }
}

impl TwistorVector {
    pub fn get(&self, idx: &[u8]) -> Result<Rat> {
        let (sorted, sign) = sort_with_sign(idx);
        if sign == 0 {
            return Ok(Rat::zero());
        }
        let v = self
            .values
            .get(&sorted)
            .ok_or_else(|| Error::MissingTwistor(sorted.clone()))?;
        Ok(if sign < 0 { -v.clone() } else { v.clone() })
    }

    pub fn proportional(&self, other: &TwistorVector) -> bool {
        if self.ground != other.ground {
            return false;
        }
        let Some((key0, a0)) = self.values.iter().find(|(_, v)| !v.is_zero()) else {
            return false;
        };
        let Some(b0) = other.values.get(key0) else {
            return false;
        };
        if b0.is_zero() {
            return false;
        }
        self.values.iter().all(|(key, a)| {
            let b = other.values.get(key).cloned().unwrap_or_else(Rat::zero);
            a.clone() * b0.clone() == b * a0.clone()
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ground": self.ground,
            "values": self.values.iter().map(|(i, v)| json!({
                "I": i,
                "v": rat_to_string(v),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Twistor coordinates of `y` (a point of Gr(k, k+4)) with respect to `z`:
/// the value at {i1<i2<i3<i4} is det of the rows of `y` stacked over Z's rows
/// i1..i4.
pub fn twistors(y: &GrassmannPoint, z: &ZMatrix) -> Result<TwistorVector> {
    if y.n() != z.k + 4 || y.k != z.k {
        return Err(Error::DimensionMismatch(format!(
            "twistors: Y is {} x {}, Z expects k={} (columns {})",
            y.k,
            y.n(),
            z.k,
            z.k + 4
        )));
    }
    let labels: Vec<u8> = (1..=z.n as u8).collect();
    let mut values = BTreeMap::new();
    for quad in subsets_k(&labels, 4) {
        let mut m: Mat<Rat> = y.entries.clone();
        for &i in &quad {
            m.push(z.entries[(i - 1) as usize].clone());
        }
        values.insert(quad, det(&m));
    }
    Ok(TwistorVector {
        ground: labels,
        values,
    })
}

/// Generalized Vandermonde with rows t_j^(i-1); totally positive for
/// 0 < t_1 < ... < t_n.
fn vandermonde<T: Scalar>(params: &[T], rows: usize) -> Mat<T> {
    (0..rows)
        .map(|i| {
            params
                .iter()
                .map(|t| {
                    let mut v = T::one();
                    for _ in 0..i {
                        v = v * t.clone();
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// Applies a few random elementary column operations col_j += t * col_{j-1}
/// with t > 0; these preserve total positivity exactly.
fn mix_columns(m: &mut Mat<Rat>, rng: &mut SeedStream, rounds: usize) {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    if cols < 2 {
        return;
    }
    for _ in 0..rounds {
        let j = 1 + rng.usize_below(cols - 1);
        let t = rng.positive_rat(3);
        for row in m.iter_mut() {
            let add = t.clone() * row[j - 1].clone();
            row[j] += add;
        }
    }
}

/// A random totally positive point of Gr(k, n), deterministic in the seed.
pub fn sample_top_cell(k: usize, n: usize, rng: &mut SeedStream) -> Result<GrassmannPoint> {
    if k > n {
        return Err(Error::DimensionMismatch(format!("k={k} > n={n}")));
    }
    let params = rng.increasing_positive(n);
    let mut entries = vandermonde(&params, k);
    mix_columns(&mut entries, rng, 2);
    GrassmannPoint::new(k, (1..=n as u8).collect(), entries)
}

/// A random totally positive n x (k+4) amplituhedron matrix.
pub fn sample_z(k: usize, n: usize, rng: &mut SeedStream) -> Result<ZMatrix> {
    if k + 4 > n {
        return Err(Error::DimensionMismatch(format!("k+4={} > n={n}", k + 4)));
    }
    let params = rng.increasing_positive(n);
    // Z has rows t_i^(j-1): row minors are generalized Vandermonde minors.
    let by_cols = vandermonde(&params, k + 4);
    let mut entries: Mat<Rat> = (0..n)
        .map(|i| (0..k + 4).map(|j| by_cols[j][i].clone()).collect())
        .collect();
    // Column operations multiply all row minors by det of an elementary
    // matrix (= 1), so positivity is untouched.
    mix_columns(&mut entries, rng, 2);
    ZMatrix::new(n, k, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn point(k: usize, n: usize, rows: &[&[i64]]) -> GrassmannPoint {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect();
        GrassmannPoint::new(k, (1..=n as u8).collect(), entries).unwrap()
    }

    #[test]
    fn identity_block_pluckers() {
        // k x k identity at columns {2,4}, zeros elsewhere: value 1 there, 0 elsewhere.
        let p = point(2, 4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let pv = p.pluckers().unwrap();
        assert_eq!(pv.values[&vec![2, 4]], rat_int(1));
        assert_eq!(
            pv.support(),
            vec![vec![2u8, 4]],
            "only the identity block survives"
        );
    }

    #[test]
    fn antisymmetric_lookup() {
        let mut rng = SeedStream::new(11);
        let p = sample_top_cell(2, 4, &mut rng).unwrap();
        let pv = p.pluckers().unwrap();
        assert_eq!(pv.get_signed(&[3, 1]), -pv.get_signed(&[1, 3]));
        assert_eq!(pv.get_signed(&[2, 2]), Rat::zero());
    }

    #[test]
    fn pluckers_match_direct_determinants() {
        // Brute-force oracle: all 6 column-pair 2x2 determinants of a random
        // rational 2x4 matrix.
        let entries = vec![
            vec![rat(1, 2), rat_int(3), rat(-2, 5), rat_int(1)],
            vec![rat_int(2), rat(1, 3), rat_int(4), rat(7, 2)],
        ];
        let p = GrassmannPoint::new(2, vec![1, 2, 3, 4], entries.clone()).unwrap();
        let pv = p.pluckers().unwrap();
        for cols in subsets_k(&[1, 2, 3, 4], 2) {
            let (a, b) = ((cols[0] - 1) as usize, (cols[1] - 1) as usize);
            let direct = entries[0][a].clone() * entries[1][b].clone()
                - entries[0][b].clone() * entries[1][a].clone();
            assert_eq!(pv.values[&cols], direct);
        }
    }

    #[test]
    fn rank_deficient_rejected() {
        let entries = vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
        ];
        assert_eq!(
            GrassmannPoint::new(2, vec![1, 2, 3], entries).unwrap_err(),
            Error::RankDeficient
        );
    }

    #[test]
    fn vandermonde_is_positive() {
        let mut rng = SeedStream::new(5);
        let p = sample_top_cell(2, 7, &mut rng).unwrap();
        assert_eq!(p.positivity_class().unwrap(), PositivityClass::Positive);
        let pv = p.pluckers().unwrap();
        assert_eq!(pv.support().len(), 21);
    }

    #[test]
    fn identity_block_is_nonnegative_and_mixed_is_neither() {
        let p = point(2, 4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        assert_eq!(
            p.positivity_class().unwrap(),
            PositivityClass::Nonnegative
        );
        let q = point(2, 4, &[&[1, 0, 0, 1], &[0, 1, 1, 0]]);
        assert_eq!(q.positivity_class().unwrap(), PositivityClass::Neither);
    }

    #[test]
    fn cyc_full_rotation_and_refl_involution() {
        let mut rng = SeedStream::new(9);
        let p = sample_top_cell(2, 5, &mut rng).unwrap();
        let mut q = p.clone();
        for _ in 0..5 {
            q = q.cyc();
        }
        assert!(p.same_point(&q));
        assert!(p.same_point(&p.refl().refl()));
    }

    #[test]
    fn ops_preserve_nonnegativity() {
        let mut rng = SeedStream::new(23);
        for trial in 0..100 {
            let mut s = rng.derive(trial);
            let p = sample_top_cell(2, 6, &mut s).unwrap();
            for q in [p.cyc(), p.refl()] {
                assert_ne!(
                    q.positivity_class().unwrap(),
                    PositivityClass::Neither,
                    "cyc/refl left the nonnegative Grassmannian"
                );
            }
        }
    }

    #[test]
    fn pre_inserts_zero_column_and_is_sectioned_by_deletion() {
        let mut rng = SeedStream::new(2);
        let p = sample_top_cell(2, 5, &mut rng).unwrap();
        let q = p.delete_column(3).unwrap();
        let r = q.pre(3).unwrap();
        assert_eq!(r.ground, vec![1, 2, 3, 4, 5]);
        assert!(r.entries.iter().all(|row| row[2].is_zero()));
        assert!(r.delete_column(3).unwrap().same_point(&q));
        assert!(q.pre(4).is_err());
    }

    #[test]
    fn twistor_empty_y_is_z_minor() {
        let mut rng = SeedStream::new(4);
        let z = sample_z(0, 6, &mut rng).unwrap();
        let y = GrassmannPoint {
            k: 0,
            ground: vec![1, 2, 3, 4],
            entries: vec![],
        };
        let tw = twistors(&y, &z).unwrap();
        for (i, v) in &tw.values {
            assert_eq!(v, &z.row_minor(i));
            assert_eq!(sign_of(v), 1);
        }
    }

    #[test]
    fn twistor_row_scaling_is_uniform() {
        let mut rng = SeedStream::new(14);
        let z = sample_z(1, 6, &mut rng).unwrap();
        let c = sample_top_cell(1, 6, &mut rng).unwrap();
        let y = GrassmannPoint::new(1, (1..=5).collect(), mat_mul(&c.entries, &z.entries)).unwrap();
        let mut y3 = y.clone();
        for v in y3.entries[0].iter_mut() {
            *v *= rat_int(3);
        }
        let (t1, t2) = (twistors(&y, &z).unwrap(), twistors(&y3, &z).unwrap());
        for (key, v) in &t1.values {
            assert_eq!(t2.values[key], v.clone() * rat_int(3));
        }
    }

    #[test]
    fn twistor_cauchy_binet_oracle() {
        // k=1, n=6: twistor at I equals sum_j C_{1j} * (signed Z minor on {j} ∪ I).
        let mut rng = SeedStream::new(31);
        let z = sample_z(1, 6, &mut rng).unwrap();
        let c = sample_top_cell(1, 6, &mut rng).unwrap();
        let y = GrassmannPoint::new(1, (1..=5).collect(), mat_mul(&c.entries, &z.entries)).unwrap();
        let tw = twistors(&y, &z).unwrap();
        for (i, v) in &tw.values {
            let mut acc = Rat::zero();
            for j in 1..=6u8 {
                if i.contains(&j) {
                    continue;
                }
                let mut rows = vec![j];
                rows.extend_from_slice(i);
                let (sorted, sign) = sort_with_sign(&rows);
                if sign == 0 {
                    continue;
                }
                let m = z.row_minor(&sorted);
                let term = c.entries[0][(j - 1) as usize].clone() * m;
                acc += if sign < 0 { -term } else { term };
            }
            assert_eq!(&acc, v, "Cauchy-Binet mismatch at {i:?}");
        }
    }

    #[test]
    fn twistors_determine_the_point() {
        let mut rng = SeedStream::new(77);
        let z = sample_z(2, 7, &mut rng).unwrap();
        for trial in 0..100 {
            let mut s = rng.derive(1000 + trial);
            let a = sample_top_cell(2, 6, &mut s).unwrap();
            let b = sample_top_cell(2, 6, &mut s).unwrap();
            let ya = GrassmannPoint::new(2, (1..=6).collect(), a.entries.clone()).unwrap();
            let yb = GrassmannPoint::new(2, (1..=6).collect(), b.entries.clone()).unwrap();
            if ya.same_point(&yb) {
                continue;
            }
            let ta = twistors(&ya, &z).unwrap();
            let tb = twistors(&yb, &z).unwrap();
            assert!(!ta.proportional(&tb));
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_top_cell(2, 7, &mut SeedStream::new(7)).unwrap();
        let b = sample_top_cell(2, 7, &mut SeedStream::new(7)).unwrap();
        assert_eq!(a, b);
        let za = sample_z(1, 6, &mut SeedStream::new(7)).unwrap();
        let zb = sample_z(1, 6, &mut SeedStream::new(7)).unwrap();
        assert_eq!(za, zb);
        assert!(za.is_totally_positive());
    }

    #[test]
    fn matrix_from_pluckers_roundtrip() {
        let mut rng = SeedStream::new(19);
        let p = sample_top_cell(3, 6, &mut rng).unwrap();
        let pv = p.pluckers().unwrap();
        let q = matrix_from_pluckers(&pv).unwrap();
        assert!(q.pluckers().unwrap().proportional(&pv));
    }

    #[test]
    fn matrix_from_pluckers_identity_block() {
        let p = point(2, 4, &[&[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let q = matrix_from_pluckers(&p.pluckers().unwrap()).unwrap();
        assert!(q.same_point(&p));
    }

    #[test]
    fn unrealizable_vector_rejected() {
        // Violates the Plücker relation for Gr(2,4).
        let mut values = BTreeMap::new();
        for s in subsets_k(&[1, 2, 3, 4], 2) {
            values.insert(s, rat_int(1));
        }
        values.insert(vec![1u8, 4], rat_int(5));
        let pv = PluckerVector {
            k: 2,
            ground: vec![1, 2, 3, 4],
            values,
        };
        assert!(matches!(
            matrix_from_pluckers(&pv),
            Err(Error::NotRealizable(_))
        ));
    }
}
