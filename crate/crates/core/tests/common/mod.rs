#![allow(dead_code)]

use fparadox::generators::{make, Family, FamilySpec};
use fparadox::Graph;
use nalgebra::{DMatrix, DVector};

pub fn fam(f: Family) -> Graph {
    make(&FamilySpec::new(f)).unwrap()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

/// Dense adjacency matrix, A[i][j] = weight of arc i → j.
pub fn dense(g: &Graph) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(g.n(), g.n());
    for (i, j, w) in g.arcs() {
        a[(i, j)] = w;
    }
    a
}

pub fn ones(n: usize) -> DVector<f64> {
    DVector::from_element(n, 1.0)
}

/// f(A)𝟙 for symmetric A through its eigendecomposition.
pub fn symmetric_function_action(g: &Graph, f: impl Fn(f64) -> f64) -> Vec<f64> {
    let eig = dense(g).symmetric_eigen();
    let q = &eig.eigenvectors;
    let coeffs = q.transpose() * ones(g.n());
    let scaled = DVector::from_iterator(
        g.n(),
        coeffs.iter().zip(eig.eigenvalues.iter()).map(|(c, &l)| c * f(l)),
    );
    (q * scaled).iter().copied().collect()
}

/// Largest eigenvalue modulus of a general square matrix.
pub fn dense_spectral_radius(g: &Graph) -> f64 {
    dense(g)
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn max_rel_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(1.0))
        .fold(0.0, f64::max)
}
