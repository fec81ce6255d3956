//! The decomposition `T^n_{-s} = B ⊕ H ⊕ L` with projection `p` and
//! contracting homotopy `G`.
//!
//! Hom degree 1: `B = 0`, `H = Q#`, `L = D#`. Hom degree 2: `H = R#`,
//! `B = ∂(L¹)`, `L` the annihilator of `R ⊕ ξ(D)`, and `G = -ξ#`. Higher
//! degrees use standard-vector complements of an echelon basis.

use crate::cobar::{CobarComplex, CobarElement};
use crate::error::{Error, Result};
use crate::linear::{echelon_basis, Field, Matrix};
use crate::presentation::GradedSplitData;

/// Splitting data for a single bidegree.
#[derive(Clone, Debug)]
pub struct Piece<K: Field> {
    pub hom: usize,
    pub adams: usize,
    /// Representatives of the `H` basis.
    pub harmonic: Vec<Vec<K::Elem>>,
    /// Basis of `B`.
    pub boundaries: Vec<Vec<K::Elem>>,
    /// Basis of `L`.
    pub complement: Vec<Vec<K::Elem>>,
    /// `p` in `H` coordinates, one row per harmonic class.
    projection: Matrix<K>,
    /// Nonzero columns of `G : T^n → T^{n-1}`.
    homotopy: Vec<(usize, Vec<K::Elem>)>,
}

impl<K: Field> Piece<K> {
    pub fn h_dim(&self) -> usize {
        self.harmonic.len()
    }

    fn empty(k: &K, hom: usize, adams: usize, dim: usize) -> Self {
        Piece {
            hom,
            adams,
            harmonic: Vec::new(),
            boundaries: Vec::new(),
            complement: (0..dim).map(|i| k.unit_vector(dim, i)).collect(),
            projection: Matrix::zero(k, 0, dim),
            homotopy: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Splitting<K: Field> {
    cobar: CobarComplex<K>,
    data: GradedSplitData<K>,
    pieces: Vec<Vec<Piece<K>>>,
}

impl<K: Field> Splitting<K> {
    pub fn new(cobar: CobarComplex<K>, data: GradedSplitData<K>) -> Result<Self> {
        let cut = cobar.cutoffs();
        let mut pieces: Vec<Vec<Piece<K>>> = (0..=cut.hom).map(|_| Vec::with_capacity(cut.adams + 1)).collect();
        for s in 0..=cut.adams {
            for n in 0..=cut.hom {
                let piece = match n {
                    0 => build_zero(&cobar, s),
                    1 => build_one(&cobar, &data, s),
                    2 => build_two(&cobar, &data, s, &pieces[1][s])?,
                    _ => build_generic(&cobar, n, s, &pieces[n - 1][s])?,
                };
                pieces[n].push(piece);
            }
        }
        Ok(Splitting { cobar, data, pieces })
    }

    pub fn cobar(&self) -> &CobarComplex<K> {
        &self.cobar
    }

    pub fn split_data(&self) -> &GradedSplitData<K> {
        &self.data
    }

    pub fn field(&self) -> &K {
        self.cobar.field()
    }

    pub fn piece(&self, n: usize, s: usize) -> Result<&Piece<K>> {
        self.cobar.cutoffs().check(n, s)?;
        Ok(&self.pieces[n][s])
    }

    /// Basis of `H^n_{-s}` as cobar elements.
    pub fn cohomology_basis(&self, n: usize, s: usize) -> Result<Vec<CobarElement<K>>> {
        let p = self.piece(n, s)?;
        Ok(p.harmonic.iter().map(|h| CobarElement { hom: n, adams: s, coords: h.clone() }).collect())
    }

    /// `p(x)` in the coordinates of the harmonic basis.
    pub fn project(&self, x: &CobarElement<K>) -> Result<Vec<K::Elem>> {
        Ok(self.piece(x.hom, x.adams)?.projection.mul_vec(&x.coords))
    }

    /// The harmonic representative with the given coordinates.
    pub fn include(&self, n: usize, s: usize, coords: &[K::Elem]) -> Result<CobarElement<K>> {
        let k = self.field();
        let mut out = self.cobar.zero(n, s);
        for (h, c) in self.piece(n, s)?.harmonic.iter().zip(coords) {
            k.axpy(&mut out.coords, c, h);
        }
        Ok(out)
    }

    /// `G(x)`; `None` when `x` has hom degree 0 (the target is zero).
    pub fn homotopy(&self, x: &CobarElement<K>) -> Result<Option<CobarElement<K>>> {
        let piece = self.piece(x.hom, x.adams)?;
        if x.hom == 0 {
            return Ok(None);
        }
        let k = self.field();
        let mut out = self.cobar.zero(x.hom - 1, x.adams);
        for (col, v) in &piece.homotopy {
            k.axpy(&mut out.coords, &x.coords[*col], v);
        }
        Ok(Some(out))
    }
}

fn build_zero<K: Field>(cobar: &CobarComplex<K>, s: usize) -> Piece<K> {
    let k = cobar.field();
    if s > 0 {
        return Piece::empty(k, 0, s, 0);
    }
    Piece {
        hom: 0,
        adams: 0,
        harmonic: vec![vec![k.one()]],
        boundaries: Vec::new(),
        complement: Vec::new(),
        projection: Matrix::identity(k, 1),
        homotopy: Vec::new(),
    }
}

/// `H = Q#` (functionals vanishing on `D`), `L = D#` (vanishing on `Q`).
fn build_one<K: Field>(cobar: &CobarComplex<K>, data: &GradedSplitData<K>, s: usize) -> Piece<K> {
    let k = cobar.field();
    let dim = cobar.dim(1, s);
    if s == 0 {
        return Piece::empty(k, 1, 0, dim);
    }
    let d = data.degree(s);
    let mut projection = Matrix::zero(k, d.q_dim(), dim);
    let mut harmonic = Vec::with_capacity(d.q_dim());
    for (row, &qi) in d.q_indices.iter().enumerate() {
        projection.set(row, qi, k.one());
        let mut h = k.unit_vector(dim, qi);
        for (dv, &piv) in d.d_basis.iter().zip(&d.d_pivots) {
            h[piv] = k.neg(&dv[qi]);
        }
        harmonic.push(h);
    }
    let complement = (0..dim)
        .filter(|i| !d.q_indices.contains(i))
        .map(|i| k.unit_vector(dim, i))
        .collect();
    Piece {
        hom: 1,
        adams: s,
        harmonic,
        boundaries: Vec::new(),
        complement,
        projection,
        homotopy: Vec::new(),
    }
}

/// Position in `T²_{-s}` of the `V'_s` basis vector at `pos`.
fn v_prime_to_word<K: Field>(cobar: &CobarComplex<K>, data: &GradedSplitData<K>, s: usize, pos: usize) -> usize {
    let v = data.degree(s).v_basis[pos];
    let word = [data.q_indices(v.i)[v.q], v.a];
    cobar
        .basis(2, s)
        .expect("within cutoffs")
        .index_of(&[v.i, s - v.i], &word)
        .expect("V' embeds in T²")
}

fn build_two<K: Field>(cobar: &CobarComplex<K>, data: &GradedSplitData<K>, s: usize, below: &Piece<K>) -> Result<Piece<K>> {
    let k = cobar.field();
    let dim = cobar.dim(2, s);
    if dim == 0 {
        return Ok(Piece::empty(k, 2, s, 0));
    }
    let d = data.degree(s);
    let embed = |v: &[K::Elem]| -> Vec<K::Elem> {
        let mut w = k.zeros(dim);
        for (pos, c) in v.iter().enumerate().take(d.v_prime_dim) {
            if !k.is_zero(c) {
                w[v_prime_to_word(cobar, data, s, pos)] = c.clone();
            }
        }
        w
    };
    let relations: Vec<Vec<K::Elem>> = d.relations.iter().map(|r| embed(r)).collect();
    let xi_d: Vec<Vec<K::Elem>> = d.d_basis.iter().map(|dv| embed(&d.xi.mul_vec(dv))).collect();

    // Z² and the evaluation matrix on R ⊕ ξ(D).
    let cocycles = cobar.differential_matrix(2, s)?.kernel_basis();
    let targets: Vec<&Vec<K::Elem>> = relations.iter().chain(&xi_d).collect();
    if cocycles.len() != targets.len() {
        return Err(Error::Internal(format!(
            "dim Z²_-{s} = {} but dim R + dim D = {}",
            cocycles.len(),
            targets.len()
        )));
    }
    let eval_rows: Vec<Vec<K::Elem>> = cocycles.iter().map(|z| targets.iter().map(|t| k.dot(z, t)).collect()).collect();
    let eval = Matrix::from_rows(k, eval_rows, targets.len());
    let inv = eval
        .inverse()
        .ok_or_else(|| Error::Internal(format!("R ⊕ ξ(D) does not pair perfectly with Z² in degree {s}")))?;
    let harmonic = (0..relations.len())
        .map(|j| {
            let mut h = k.zeros(dim);
            for (a, z) in cocycles.iter().enumerate() {
                k.axpy(&mut h, inv.get(j, a), z);
            }
            h
        })
        .collect();

    let projection = Matrix::from_rows(k, relations.clone(), dim);
    let constraints = Matrix::from_rows(k, targets.into_iter().cloned().collect(), dim);
    let complement = constraints.kernel_basis();

    let mut homotopy = Vec::new();
    for pos in 0..d.v_prime_dim {
        let col: Vec<K::Elem> = d.xi.row(pos).iter().map(|c| k.neg(c)).collect();
        if !k.is_zero_vec(&col) {
            homotopy.push((v_prime_to_word(cobar, data, s, pos), col));
        }
    }
    homotopy.sort_by_key(|(c, _)| *c);

    let del = cobar.differential_matrix(1, s)?;
    let image: Vec<Vec<K::Elem>> = below.complement.iter().map(|l| del.mul_vec(l)).collect();
    let (boundaries, _) = echelon_basis(k, image, dim);
    Ok(Piece {
        hom: 2,
        adams: s,
        harmonic,
        boundaries,
        complement,
        projection,
        homotopy,
    })
}

fn build_generic<K: Field>(cobar: &CobarComplex<K>, n: usize, s: usize, below: &Piece<K>) -> Result<Piece<K>> {
    let k = cobar.field();
    let dim = cobar.dim(n, s);
    if dim == 0 {
        return Ok(Piece::empty(k, n, s, 0));
    }
    let (z_rows, z_piv) = echelon_basis(k, cobar.differential_matrix(n, s)?.kernel_basis(), dim);
    let del = cobar.differential_matrix(n - 1, s)?;

    // Images of the L^{n-1} basis; together they span B^n.
    let l_images: Vec<Vec<K::Elem>> = below.complement.iter().map(|l| del.mul_vec(l)).collect();
    let b_coords: Vec<Vec<K::Elem>> = l_images.iter().map(|v| z_piv.iter().map(|&p| v[p].clone()).collect()).collect();
    let (b_rref, b_piv) = echelon_basis(k, b_coords, z_rows.len());

    let mut projection_rows = Vec::new();
    let mut harmonic = Vec::new();
    for c in (0..z_rows.len()).filter(|c| !b_piv.contains(c)) {
        let mut row = k.zeros(dim);
        row[z_piv[c]] = k.one();
        for (b, &bp) in b_rref.iter().zip(&b_piv) {
            let p = z_piv[bp];
            row[p] = k.sub(&row[p], &b[c]);
        }
        projection_rows.push(row);
        harmonic.push(z_rows[c].clone());
    }
    let boundaries: Vec<Vec<K::Elem>> = b_rref
        .iter()
        .map(|b| {
            let mut v = k.zeros(dim);
            for (c, z) in b.iter().zip(&z_rows) {
                k.axpy(&mut v, c, z);
            }
            v
        })
        .collect();

    // Solve ∂ l = b for l ∈ L^{n-1}, all boundary basis vectors at once.
    let ell = l_images.len();
    let mut aug = Matrix::zero(k, dim, ell + boundaries.len());
    for (i, v) in l_images.iter().enumerate() {
        for (r, c) in v.iter().enumerate() {
            aug.set(r, i, c.clone());
        }
    }
    for (j, v) in boundaries.iter().enumerate() {
        for (r, c) in v.iter().enumerate() {
            aug.set(r, ell + j, c.clone());
        }
    }
    let (rref, piv) = aug.echelon();
    if piv != (0..ell).collect::<Vec<_>>() {
        return Err(Error::Internal(format!("∂ restricted to L^{} is not an isomorphism onto B^{n}_-{s}", n - 1)));
    }
    let mut homotopy = Vec::with_capacity(boundaries.len());
    for (j, &bp) in b_piv.iter().enumerate() {
        let mut l = k.zeros(cobar.dim(n - 1, s));
        for (i, basis) in below.complement.iter().enumerate() {
            k.axpy(&mut l, rref.get(i, ell + j), basis);
        }
        homotopy.push((z_piv[bp], l));
    }
    homotopy.sort_by_key(|(c, _)| *c);

    let complement = (0..dim)
        .filter(|i| !z_piv.contains(i))
        .map(|i| k.unit_vector(dim, i))
        .collect();
    Ok(Piece {
        hom: n,
        adams: s,
        harmonic,
        boundaries,
        complement,
        projection: Matrix::from_rows(k, projection_rows, dim),
        homotopy,
    })
}
