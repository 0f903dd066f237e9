//! Reduced simplicial homology over prime fields.
//!
//! Complexes live on at most 32 vertices and are given by their faces as
//! bitmasks. Homology is computed from ranks of boundary matrices only.

/// A simplicial complex on vertices `0..nverts`. The empty face is present
/// unless the complex is void.
#[derive(Debug, Clone)]
pub struct Complex {
    nverts: usize,
    /// faces grouped by cardinality: `by_size[c]` holds faces with `c` vertices.
    by_size: Vec<Vec<u32>>,
}

impl Complex {
    /// Complex generated by the given facets.
    pub fn from_facets(nverts: usize, facets: &[u32]) -> Self {
        Self::from_predicate(nverts, |s| facets.iter().any(|&f| s & !f == 0))
    }

    pub fn from_predicate(nverts: usize, is_face: impl Fn(u32) -> bool) -> Self {
        assert!(nverts <= 20, "complex too large for dense face enumeration");
        let mut by_size = vec![Vec::new(); nverts + 1];
        for s in 0..(1u32 << nverts) {
            if is_face(s) {
                by_size[s.count_ones() as usize].push(s);
            }
        }
        Complex { nverts, by_size }
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn is_void(&self) -> bool {
        self.by_size[0].is_empty()
    }

    pub fn num_faces(&self) -> usize {
        self.by_size.iter().map(Vec::len).sum()
    }

    /// Rank of the boundary map from faces with `c` vertices to faces with
    /// `c - 1` vertices, over GF(p).
    fn boundary_rank(&self, c: usize, p: u64) -> usize {
        if c == 0 || c > self.nverts {
            return 0;
        }
        let rows_faces = &self.by_size[c - 1];
        let cols_faces = &self.by_size[c];
        if rows_faces.is_empty() || cols_faces.is_empty() {
            return 0;
        }
        let mut mat = vec![vec![0u64; rows_faces.len()]; cols_faces.len()];
        for (ci, &face) in cols_faces.iter().enumerate() {
            let mut pos = 0;
            let mut rest = face;
            while rest != 0 {
                let v = rest.trailing_zeros();
                rest &= rest - 1;
                let sub = face & !(1 << v);
                let ri = rows_faces
                    .binary_search(&sub)
                    .expect("complex not closed under subsets");
                mat[ci][ri] = if pos % 2 == 0 { 1 } else { p - 1 };
                pos += 1;
            }
        }
        rank_mod_p(&mut mat, p)
    }

    /// `dim H̃_d` for `d = -1 ..= nverts - 1`, indexed by `d + 1`.
    pub fn reduced_betti(&self, p: u64) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.nverts + 1)
            .map(|c| self.boundary_rank(c, p))
            .collect();
        (0..=self.nverts)
            .map(|c| self.by_size[c].len() - ranks[c] - ranks[c + 1])
            .collect()
    }
}

/// Rank of a dense matrix over GF(p); the matrix is destroyed.
pub fn rank_mod_p(mat: &mut [Vec<u64>], p: u64) -> usize {
    let rows = mat.len();
    if rows == 0 {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !mat[r][col].is_multiple_of(p)) else {
            continue;
        };
        mat.swap(rank, piv);
        let inv = inv_mod(mat[rank][col] % p, p);
        for x in mat[rank].iter_mut() {
            *x = *x % p * inv % p;
        }
        let pivot_row = mat[rank].clone();
        for (r, row) in mat.iter_mut().enumerate() {
            if r == rank {
                continue;
            }
            let f = row[col] % p;
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime.
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_and_sphere() {
        // boundary of a triangle: H̃_1 = 1
        let c = Complex::from_facets(3, &[0b011, 0b101, 0b110]);
        assert_eq!(c.reduced_betti(2), vec![0, 0, 1, 0]);
        // two points: H̃_0 = 1
        let c = Complex::from_facets(2, &[0b01, 0b10]);
        assert_eq!(c.reduced_betti(3), vec![0, 1, 0]);
        // only the empty face: H̃_{-1} = 1
        let c = Complex::from_facets(0, &[0]);
        assert_eq!(c.reduced_betti(101), vec![1]);
        // a simplex is acyclic
        let c = Complex::from_facets(3, &[0b111]);
        assert_eq!(c.reduced_betti(5), vec![0, 0, 0, 0]);
    }

    #[test]
    fn void_complex_has_no_homology() {
        let c = Complex::from_predicate(2, |_| false);
        assert!(c.is_void());
        assert_eq!(c.reduced_betti(2), vec![0, 0, 0]);
    }

    #[test]
    fn projective_plane_sees_characteristic() {
        let tri: [[u32; 3]; 10] = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        let facets: Vec<u32> = tri
            .iter()
            .map(|t| t.iter().fold(0, |m, &v| m | 1 << v))
            .collect();
        let c = Complex::from_facets(6, &facets);
        assert_eq!(c.reduced_betti(2)[2..4], [1, 1]);
        assert_eq!(c.reduced_betti(3)[2..4], [0, 0]);
    }

    #[test]
    fn rank_small() {
        let mut m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank_mod_p(&mut m, 7), 1);
        let mut m = vec![vec![1, 1], vec![1, 3]];
        assert_eq!(rank_mod_p(&mut m, 2), 1);
        let mut m = vec![vec![1, 1], vec![1, 3]];
        assert_eq!(rank_mod_p(&mut m, 3), 2);
    }
}
