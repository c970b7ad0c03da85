//! Exact integer linear algebra: row echelon form over Z for lattice
//! elimination and membership, and Smith normal form with unimodular
//! transforms.
//!
//! Matrices are dense `i128`; all arithmetic is checked. The inputs here are
//! relator exponent matrices and ansatz constraint systems, which stay far
//! below any overflow threshold at desk scale.

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<i128>,
}

fn mul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("integer overflow in matrix arithmetic")
}

fn add(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("integer overflow in matrix arithmetic")
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i128>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = add(out[(i, j)], mul(a, other[(k, j)]));
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] += k * row[b]
    fn add_row(&mut self, a: usize, b: usize, k: i128) {
        for j in 0..self.cols {
            self.data[a * self.cols + j] =
                add(self.data[a * self.cols + j], mul(k, self.data[b * self.cols + j]));
        }
    }

    /// col[a] += k * col[b]
    fn add_col(&mut self, a: usize, b: usize, k: i128) {
        for i in 0..self.rows {
            self.data[i * self.cols + a] =
                add(self.data[i * self.cols + a], mul(k, self.data[i * self.cols + b]));
        }
    }

    fn neg_row(&mut self, a: usize) {
        for j in 0..self.cols {
            self.data[a * self.cols + j] = -self.data[a * self.cols + j];
        }
    }

    fn neg_col(&mut self, a: usize) {
        for i in 0..self.rows {
            self.data[i * self.cols + a] = -self.data[i * self.cols + a];
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i128;
    fn index(&self, (i, j): (usize, usize)) -> &i128 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i128 {
        &mut self.data[i * self.cols + j]
    }
}

/// Row echelon form of the row lattice of `mat`, processing columns in the
/// order given by `col_order` (a permutation of `0..cols`). Row operations
/// are unimodular, so the nonzero rows of the result generate the same
/// lattice as the rows of `mat`.
///
/// Rows whose pivot falls on a late column have zeros on all earlier columns
/// of the order; they generate the intersection of the row lattice with the
/// corresponding coordinate sublattice, which is what eliminating the early
/// variables means over Z.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub mat: IntMat,
    /// `(row, column)` pivot positions, in processing order.
    pub pivots: Vec<(usize, usize)>,
}

pub fn row_echelon(mut mat: IntMat, col_order: &[usize]) -> Echelon {
    assert_eq!(col_order.len(), mat.cols);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for &col in col_order {
        if next_row == mat.rows {
            break;
        }
        loop {
            // Pick the nonzero entry of minimal absolute value in this column.
            let mut best: Option<(usize, i128)> = None;
            for i in next_row..mat.rows {
                let v = mat[(i, col)];
                if v != 0 && best.map_or(true, |(_, bv)| v.abs() < bv.abs()) {
                    best = Some((i, v));
                }
            }
            let Some((pivot_row, _)) = best else { break };
            mat.swap_rows(next_row, pivot_row);
            let p = mat[(next_row, col)];
            let mut done = true;
            for i in next_row + 1..mat.rows {
                let v = mat[(i, col)];
                if v != 0 {
                    mat.add_row(i, next_row, -(v.div_euclid(p)));
                    if mat[(i, col)] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                if mat[(next_row, col)] < 0 {
                    mat.neg_row(next_row);
                }
                // Reduce the entries above the pivot (Hermite condition).
                let p = mat[(next_row, col)];
                for i in 0..next_row {
                    let v = mat[(i, col)];
                    let q = v.div_euclid(p);
                    if q != 0 {
                        mat.add_row(i, next_row, -q);
                    }
                }
                pivots.push((next_row, col));
                next_row += 1;
                break;
            }
        }
    }
    Echelon { mat, pivots }
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` by the echelon basis. Returns the remainder; the zero
    /// vector means `v` lies in the row lattice.
    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let mut v = v.to_vec();
        for &(row, col) in &self.pivots {
            let p = self.mat[(row, col)];
            let q = v[col].div_euclid(p);
            if q != 0 {
                for j in 0..self.mat.cols {
                    v[j] = add(v[j], -mul(q, self.mat[(row, j)]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }
}

/// Smith normal form `u * a * v = d` with `u`, `v` unimodular and
/// `d` diagonal with each entry dividing the next.
#[derive(Debug, Clone)]
pub struct Snf {
    pub d: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// The full diagonal, length `min(rows, cols)`, divisibility-ordered.
    pub fn diagonal(&self) -> Vec<i128> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)]).collect()
    }

    /// Diagonal entries different from 1 (torsion and zero factors).
    pub fn nonunit_factors(&self) -> Vec<i128> {
        self.diagonal().into_iter().filter(|&x| x != 1).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|&&x| x != 0).count()
    }
}

pub fn smith_normal_form(a: &IntMat) -> Snf {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let n = a.rows.min(a.cols);
    let mut t = 0;
    while t < n {
        // Find the nonzero entry of minimal absolute value in the remaining block.
        let mut best: Option<(usize, usize, i128)> = None;
        for i in t..d.rows {
            for j in t..d.cols {
                let x = d[(i, j)];
                if x != 0 && best.map_or(true, |(_, _, bv)| x.abs() < bv.abs()) {
                    best = Some((i, j, x));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        let mut clean = false;
        while !clean {
            clean = true;
            for i in t + 1..d.rows {
                let q = d[(i, t)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    // Remainder smaller than pivot: swap it up and restart.
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                let q = d[(t, j)].div_euclid(d[(t, t)]);
                if q != 0 {
                    d.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if d[(t, j)] != 0 {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                    clean = false;
                }
            }
        }

        // Divisibility: the pivot must divide every remaining entry.
        let p = d[(t, t)];
        let mut fixed = true;
        'outer: for i in t + 1..d.rows {
            for j in t + 1..d.cols {
                if d[(i, j)] % p != 0 {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if !fixed {
            continue;
        }
        if d[(t, t)] < 0 {
            d.neg_row(t);
            u.neg_row(t);
        }
        t += 1;
    }
    // Normalize signs of any trailing diagonal entries.
    for i in 0..n {
        if d[(i, i)] < 0 {
            d.neg_row(i);
            u.neg_row(i);
        }
    }
    Snf { d, u, v }
}

/// gcd and Bezout coefficients: `gcd(a, b) = x*a + y*b`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// gcd of a list with one Bezout coefficient per entry; gcd of the empty
/// list is 0.
pub fn ext_gcd_list(values: &[i128]) -> (i128, Vec<i128>) {
    let mut g = 0i128;
    let mut coeffs = vec![0i128; values.len()];
    for (k, &v) in values.iter().enumerate() {
        let (g2, x, y) = ext_gcd(g, v);
        for c in coeffs.iter_mut().take(k) {
            *c = mul(*c, x);
        }
        coeffs[k] = y;
        g = g2;
    }
    (g, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_identity() {
        let snf = smith_normal_form(&IntMat::identity(3));
        assert_eq!(snf.diagonal(), vec![1, 1, 1]);
    }

    #[test]
    fn snf_diag_2_3() {
        // Hand row/column reduction gives invariant factors (1, 6).
        let a = IntMat::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![1, 6]);
        assert_eq!(snf.u.matmul(&a).matmul(&snf.v), snf.d);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IntMat::zero(2, 3);
        let snf = smith_normal_form(&a);
        assert_eq!(snf.diagonal(), vec![0, 0]);
        assert_eq!(snf.nonunit_factors(), vec![0, 0]);
    }

    #[test]
    fn snf_random_against_transform_identity() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..5);
            let mut a = IntMat::zero(r, c);
            for i in 0..r {
                for j in 0..c {
                    a[(i, j)] = rng.gen_range(-6..=6);
                }
            }
            let snf = smith_normal_form(&a);
            assert_eq!(snf.u.matmul(&a).matmul(&snf.v), snf.d);
            let diag = snf.diagonal();
            for w in diag.windows(2) {
                if w[0] != 0 {
                    assert_eq!(w[1] % w[0], 0, "divisibility chain broken: {diag:?}");
                } else {
                    assert_eq!(w[1], 0);
                }
            }
        }
    }

    #[test]
    fn echelon_membership_and_elimination() {
        // Lattice generated by (2, 0, 1) and (0, 3, 1).
        let a = IntMat::from_rows(vec![vec![2, 0, 1], vec![0, 3, 1]]);
        let order: Vec<usize> = vec![0, 1, 2];
        let ech = row_echelon(a, &order);
        assert!(ech.contains(&[2, 0, 1]));
        assert!(ech.contains(&[2, 3, 2]));
        assert!(!ech.contains(&[1, 0, 0]));
        assert!(!ech.contains(&[2, 0, 0]));
    }

    #[test]
    fn echelon_eliminates_ordered_prefix() {
        // Eliminating x from {x + y, x - y} must produce 2y.
        let a = IntMat::from_rows(vec![vec![1, 1], vec![1, -1]]);
        let ech = row_echelon(a, &[0, 1]);
        let tail: Vec<&[i128]> = ech
            .pivots
            .iter()
            .filter(|&&(_, c)| c == 1)
            .map(|&(r, _)| ech.mat.row(r))
            .collect();
        assert_eq!(tail, vec![&[0, 2][..]]);
    }

    #[test]
    fn gcd_certificates() {
        let (g, x, y) = ext_gcd(12, 18);
        assert_eq!(g, 6);
        assert_eq!(12 * x + 18 * y, 6);
        let (g, cs) = ext_gcd_list(&[6, 10, 15]);
        assert_eq!(g, 1);
        assert_eq!(6 * cs[0] + 10 * cs[1] + 15 * cs[2], 1);
        let (g, _) = ext_gcd_list(&[]);
        assert_eq!(g, 0);
    }
}
