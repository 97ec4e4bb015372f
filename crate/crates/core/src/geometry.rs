//! Hyperbolic realizability of truncated polyhedra: Gram matrices, their
//! signatures, hyperideal-vertex tests and a numerical realization of the
//! face normals in Minkowski space `ℝ^{3,1}` (signature `+ + + −`).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Matrix4, Vector4};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::diagram::{boundary_subgroups, OrbifoldPresentation, Retraction, SpatialGraphDiagram};
use crate::error::{Error, Result};
use crate::fuchsian::FuchsianSignature;
use crate::word::Word;

pub const EIGEN_TOL: f64 = 1e-9;
pub const REALIZE_TOL: f64 = 1e-8;

/// Symmetric matrix indexed by faces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub size: usize,
    /// Row-major entries.
    pub entries: Vec<f64>,
}

impl GramMatrix {
    pub fn identity(size: usize) -> Self {
        let mut entries = alloc::vec![0.0; size * size];
        for i in 0..size {
            entries[i * size + i] = 1.0;
        }
        GramMatrix { size, entries }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.size + j] = v;
        self.entries[j * self.size + i] = v;
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_slice(self.size, self.size, &self.entries)
    }

    /// Determinant of the principal minor on `faces`.
    pub fn minor(&self, faces: &[usize]) -> f64 {
        let k = faces.len();
        DMatrix::from_fn(k, k, |i, j| self.get(faces[i], faces[j])).determinant()
    }
}

/// `−cos(π/m)`, the Gram entry of a dihedral angle `π/m`.
pub fn angle_entry(m: u32) -> f64 {
    -libm::cos(PI / m as f64)
}

/// Gram matrix of a tetrahedron whose opposite edge pairs carry the angles
/// `π/p`, `π/q`, `π/r`: the faces pairs `{0,1}` and `{2,3}` meet at angle
/// `π/p`, `{0,2}` and `{1,3}` at `π/q`, `{0,3}` and `{1,2}` at `π/r`.
pub fn tetrahedron_gram(p: u32, q: u32, r: u32) -> GramMatrix {
    let mut g = GramMatrix::identity(4);
    for (a, b, m) in [(0, 1, p), (2, 3, p), (0, 2, q), (1, 3, q), (0, 3, r), (1, 2, r)] {
        g.set(a, b, angle_entry(m));
    }
    g
}

/// Numbers of positive, negative and zero eigenvalues, with `tol` deciding
/// zero.
pub fn signature_check_with(g: &GramMatrix, tol: f64) -> (usize, usize, usize) {
    let eig = nalgebra::SymmetricEigen::new(g.to_matrix());
    let mut out = (0, 0, 0);
    for &l in eig.eigenvalues.iter() {
        if l > tol {
            out.0 += 1;
        } else if l < -tol {
            out.1 += 1;
        } else {
            out.2 += 1;
        }
    }
    out
}

pub fn signature_check(g: &GramMatrix) -> (usize, usize, usize) {
    signature_check_with(g, EIGEN_TOL)
}

/// Whether the three faces meet at a hyperideal (truncatable) vertex: the
/// principal minor is negative.
pub fn vertex_hyperideal_check(g: &GramMatrix, faces: [usize; 3]) -> bool {
    g.minor(&faces) < -1e-12
}

/// Combinatorics and dihedral angles `π/m` of a polyhedron.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polyhedron {
    pub face_count: usize,
    /// `(face, face, m)` per edge.
    pub edges: Vec<(usize, usize, u32)>,
    /// Faces around each vertex in cyclic order.
    pub vertices: Vec<Vec<usize>>,
    /// Vertex positions of a round model, used for seeding.
    pub model: Vec<[f64; 3]>,
}

impl Polyhedron {
    /// Gram matrix with the prescribed entries on adjacent faces and zero on
    /// non-adjacent pairs (a placeholder; only adjacent entries are
    /// constrained).
    pub fn prescribed_gram(&self) -> GramMatrix {
        let mut g = GramMatrix::identity(self.face_count);
        for &(a, b, m) in &self.edges {
            g.set(a, b, angle_entry(m));
        }
        g
    }

    /// Labels of the edges at a vertex, in cyclic order.
    pub fn vertex_labels(&self, v: usize) -> Vec<u32> {
        let fs = &self.vertices[v];
        (0..fs.len())
            .map(|i| {
                let (a, b) = (fs[(i + fs.len() - 1) % fs.len()], fs[i]);
                self.edges
                    .iter()
                    .find(|&&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a))
                    .map(|e| e.2)
                    .expect("consecutive faces at a vertex share an edge")
            })
            .collect()
    }

    fn face_vertices(&self, f: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].contains(&f)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AndreevReport {
    pub passed: bool,
    pub violations: Vec<String>,
}

/// Necessary conditions for a compact truncated realization: 3-valent
/// vertices have angle sum below `π`, no 4-valent vertex has four right
/// angles, and every truncating orbifold is hyperbolic.
pub fn andreev_precheck(poly: &Polyhedron) -> AndreevReport {
    let mut violations = Vec::new();
    for v in 0..poly.vertices.len() {
        let labels = poly.vertex_labels(v);
        if labels.iter().any(|&m| m < 2) {
            violations.push(format!("vertex {v}: label below 2"));
            continue;
        }
        if labels.len() == 3 && labels.iter().map(|&m| 1.0 / m as f64).sum::<f64>() >= 1.0 - 1e-12 {
            violations.push(format!("vertex {v}: angle sum of {labels:?} is not below π"));
        }
        if labels.len() == 4 && labels.iter().all(|&m| m == 2) {
            violations.push(format!("vertex {v}: four right angles (2,2,2,2)"));
        }
        match FuchsianSignature::new(0, labels.clone()) {
            Ok(s) if s.is_hyperbolic() => {}
            _ => violations.push(format!("vertex {v}: truncating orbifold (0;{labels:?}) is not hyperbolic")),
        }
    }
    AndreevReport { passed: violations.is_empty(), violations }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealizeOptions {
    pub tol: f64,
    pub seed: u64,
    pub restarts: usize,
    pub max_iterations: usize,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { tol: REALIZE_TOL, seed: 7, restarts: 16, max_iterations: 300 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinkowskiRealization {
    /// Outward unit spacelike normal of each face.
    pub normals: Vec<[f64; 4]>,
    /// Largest constraint violation.
    pub residual: f64,
    /// Unit normal of the truncating plane of each vertex (the polar of the
    /// hyperideal vertex).
    pub truncating: Vec<[f64; 4]>,
    /// Largest `|⟨truncating normal, incident face normal⟩|`.
    pub orthogonality: f64,
    /// Signature of the Gram matrix of all face normals.
    pub signature: (usize, usize, usize),
    /// Restart that succeeded.
    pub restart: usize,
    /// Residual after every iteration of the successful attempt.
    pub trajectory: Vec<f64>,
}

impl MinkowskiRealization {
    pub fn gram(&self) -> GramMatrix {
        let n = self.normals.len();
        let mut g = GramMatrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                g.entries[i * n + j] = minkowski(&self.normals[i], &self.normals[j]);
            }
        }
        g
    }
}

pub fn minkowski(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
}

fn det4(c: [&[f64; 4]; 4]) -> f64 {
    Matrix4::from_fn(|i, j| c[j][i]).determinant()
}

struct System<'a> {
    poly: &'a Polyhedron,
}

impl System<'_> {
    fn residual_count(&self) -> usize {
        self.poly.face_count + self.poly.edges.len() + self.poly.vertices.iter().map(|f| f.len().saturating_sub(3)).sum::<usize>()
    }

    fn normals(x: &DVector<f64>, f: usize) -> [f64; 4] {
        [x[4 * f], x[4 * f + 1], x[4 * f + 2], x[4 * f + 3]]
    }

    fn evaluate(&self, x: &DVector<f64>, jac: Option<&mut DMatrix<f64>>) -> DVector<f64> {
        let m = self.residual_count();
        let mut r = DVector::zeros(m);
        let mut jac = jac;
        if let Some(j) = jac.as_deref_mut() {
            j.fill(0.0);
        }
        let jvec = |e: &[f64; 4]| [e[0], e[1], e[2], -e[3]];
        let mut row = 0;
        for f in 0..self.poly.face_count {
            let e = Self::normals(x, f);
            r[row] = minkowski(&e, &e) - 1.0;
            if let Some(j) = jac.as_deref_mut() {
                let g = jvec(&e);
                for k in 0..4 {
                    j[(row, 4 * f + k)] = 2.0 * g[k];
                }
            }
            row += 1;
        }
        for &(a, b, lab) in &self.poly.edges {
            let (ea, eb) = (Self::normals(x, a), Self::normals(x, b));
            r[row] = minkowski(&ea, &eb) - angle_entry(lab);
            if let Some(j) = jac.as_deref_mut() {
                let (ga, gb) = (jvec(&eb), jvec(&ea));
                for k in 0..4 {
                    j[(row, 4 * a + k)] = ga[k];
                    j[(row, 4 * b + k)] = gb[k];
                }
            }
            row += 1;
        }
        for fs in &self.poly.vertices {
            for jdx in 3..fs.len() {
                let cols = [fs[0], fs[1], fs[2], fs[jdx]];
                let es = cols.map(|f| Self::normals(x, f));
                r[row] = det4([&es[0], &es[1], &es[2], &es[3]]);
                if let Some(j) = jac.as_deref_mut() {
                    // The determinant is linear in each column.
                    for (ci, &f) in cols.iter().enumerate() {
                        for k in 0..4 {
                            let mut unit = [0.0; 4];
                            unit[k] = 1.0;
                            let mut c = [&es[0], &es[1], &es[2], &es[3]];
                            c[ci] = &unit;
                            j[(row, 4 * f + k)] += det4(c);
                        }
                    }
                }
                row += 1;
            }
        }
        r
    }
}

fn max_abs(r: &DVector<f64>) -> f64 {
    r.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

fn seed_normals(poly: &Polyhedron, rng: Option<&mut ChaCha8Rng>, scale: f64) -> DVector<f64> {
    let unit: Vec<[f64; 3]> = poly
        .model
        .iter()
        .map(|p| {
            let n = libm::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
            [p[0] / n, p[1] / n, p[2] / n]
        })
        .collect();
    let mut x = DVector::zeros(4 * poly.face_count);
    let mut rng = rng;
    for f in 0..poly.face_count {
        let vs = poly.face_vertices(f);
        let mut n = [0.0; 3];
        for &v in &vs {
            for k in 0..3 {
                n[k] += unit[v][k];
            }
        }
        if let Some(rng) = rng.as_deref_mut() {
            for nk in &mut n {
                *nk += scale * (2.0 * (rng.next_u64() as f64 / u64::MAX as f64) - 1.0);
            }
        }
        let len = libm::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]).max(1e-12);
        let n = n.map(|c| c / len);
        let mean = vs.iter().map(|&v| n[0] * unit[v][0] + n[1] * unit[v][1] + n[2] * unit[v][2]).sum::<f64>() / vs.len().max(1) as f64;
        let d = (1.3 * mean).clamp(-0.95, 0.95);
        let s = libm::sqrt(1.0 - d * d);
        for k in 0..3 {
            x[4 * f + k] = n[k] / s;
        }
        x[4 * f + 3] = d / s;
    }
    x
}

/// Levenberg–Marquardt on the constraint system from `x`. Returns the final
/// point, its residual and the residual trajectory.
fn levenberg_marquardt(sys: &System<'_>, mut x: DVector<f64>, opts: &RealizeOptions) -> (DVector<f64>, f64, Vec<f64>) {
    let n = x.len();
    let m = sys.residual_count();
    let mut jac = DMatrix::zeros(m, n);
    let mut r = sys.evaluate(&x, Some(&mut jac));
    let mut cost = r.norm_squared();
    let mut lambda = 1e-3;
    let mut trajectory = alloc::vec![max_abs(&r)];
    for _ in 0..opts.max_iterations {
        if max_abs(&r) < 1e-15 {
            break;
        }
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * &r;
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for i in 0..n {
                a[(i, i)] += lambda * (1.0 + jtj[(i, i)]);
            }
            let Some(step) = a.cholesky().map(|c| c.solve(&(-&g))) else {
                lambda *= 10.0;
                continue;
            };
            let xn = &x + &step;
            let rn = sys.evaluate(&xn, None);
            let cn = rn.norm_squared();
            if cn < cost {
                x = xn;
                r = sys.evaluate(&x, Some(&mut jac));
                cost = cn;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        trajectory.push(max_abs(&r));
        if !improved {
            break;
        }
    }
    let res = max_abs(&r);
    (x, res, trajectory)
}

/// Point of `ℝ^{3,1}` Minkowski-orthogonal to three vectors.
fn polar_point(a: &[f64; 4], b: &[f64; 4], c: &[f64; 4]) -> [f64; 4] {
    let mut w = [0.0; 4];
    for (k, wk) in w.iter_mut().enumerate() {
        let mut unit = [0.0; 4];
        unit[k] = 1.0;
        *wk = det4([a, b, c, &unit]);
    }
    // Euclidean orthogonal to a, b, c; the metric turns it Minkowski
    // orthogonal.
    w[3] = -w[3];
    w
}

/// One attempt of the realization: restart `0` starts from the round model,
/// later restarts perturb it with seeded noise.
pub fn realize_attempt(poly: &Polyhedron, opts: &RealizeOptions, restart: usize) -> Result<MinkowskiRealization> {
    let sys = System { poly };
    let x0 = if restart == 0 {
        seed_normals(poly, None, 0.0)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(restart as u64));
        seed_normals(poly, Some(&mut rng), 0.15 * restart as f64)
    };
    let (x, residual, trajectory) = levenberg_marquardt(&sys, x0, opts);
    if residual >= opts.tol || !residual.is_finite() {
        return Err(Error::NonConvergence { best_residual: residual });
    }
    let normals: Vec<[f64; 4]> = (0..poly.face_count).map(|f| System::normals(&x, f)).collect();
    let mut truncating = Vec::with_capacity(poly.vertices.len());
    let mut orthogonality = 0.0f64;
    for (v, fs) in poly.vertices.iter().enumerate() {
        let mut w = polar_point(&normals[fs[0]], &normals[fs[1]], &normals[fs[2]]);
        let norm = minkowski(&w, &w);
        if norm <= 0.0 {
            return Err(Error::CertificationFailure(format!("vertex {v} is not hyperideal")));
        }
        let s = libm::sqrt(norm);
        w = w.map(|c| c / s);
        // Projective convexity: every other face sees the vertex on the same
        // side.
        let others: Vec<f64> =
            (0..poly.face_count).filter(|f| !fs.contains(f)).map(|f| minkowski(&normals[f], &w)).collect();
        if let Some(&first) = others.first() {
            if first > 0.0 {
                w = w.map(|c| -c);
            }
            if others.iter().any(|&o| o * first <= 0.0) {
                return Err(Error::CertificationFailure(format!("vertex {v} lies on the wrong side of a face")));
            }
        }
        for &f in fs {
            orthogonality = orthogonality.max(minkowski(&w, &normals[f]).abs());
        }
        truncating.push(w);
    }
    if orthogonality >= opts.tol {
        return Err(Error::NonConvergence { best_residual: orthogonality });
    }
    let mut real = MinkowskiRealization {
        normals,
        residual,
        truncating,
        orthogonality,
        signature: (0, 0, 0),
        restart,
        trajectory,
    };
    real.signature = signature_check(&real.gram());
    Ok(real)
}

/// Finds outward face normals realizing the dihedral angles with all
/// vertices hyperideal and truncated orthogonally. Tries the round-model seed
/// and then up to `restarts` perturbed seeds.
pub fn realize_polyhedron(poly: &Polyhedron, opts: &RealizeOptions) -> Result<MinkowskiRealization> {
    let report = andreev_precheck(poly);
    if !report.passed {
        return Err(Error::PreconditionViolation(report.violations.join("; ")));
    }
    let mut best = f64::INFINITY;
    for restart in 0..=opts.restarts {
        match realize_attempt(poly, opts, restart) {
            Ok(r) => return Ok(r),
            Err(Error::NonConvergence { best_residual }) => best = best.min(best_residual),
            Err(_) => {}
        }
    }
    Err(Error::NonConvergence { best_residual: best })
}

/// Reflection in the plane with unit normal `e`: `X ↦ X − 2⟨e, X⟩ e`.
pub fn reflection(e: &[f64; 4]) -> Matrix4<f64> {
    let v = Vector4::from_column_slice(e);
    let je = Vector4::new(e[0], e[1], e[2], -e[3]);
    Matrix4::identity() - 2.0 * v * je.transpose()
}

/// Inverse of a Lorentz transformation: `J Mᵀ J`.
fn lorentz_inverse(m: &Matrix4<f64>) -> Matrix4<f64> {
    let j = Matrix4::from_diagonal(&Vector4::new(1.0, 1.0, 1.0, -1.0));
    j * m.transpose() * j
}

/// The boost taking `(0, 0, 0, 1)` to the future unit timelike vector `c`.
fn lorentz_boost(c: &[f64; 4]) -> Matrix4<f64> {
    let v = nalgebra::Vector3::new(c[0], c[1], c[2]);
    let mut b = Matrix4::identity();
    let top = nalgebra::Matrix3::identity() + v * v.transpose() / (1.0 + c[3]);
    b.fixed_view_mut::<3, 3>(0, 0).copy_from(&top);
    for i in 0..3 {
        b[(i, 3)] = c[i];
        b[(3, i)] = c[i];
    }
    b[(3, 3)] = c[3];
    b
}

fn eval_matrix(images: &[Matrix4<f64>], w: &Word) -> Matrix4<f64> {
    let inverses: Vec<Matrix4<f64>> = images.iter().map(lorentz_inverse).collect();
    let mut m = Matrix4::identity();
    for &l in w.letters() {
        let g = l.unsigned_abs() as usize - 1;
        m *= if l > 0 { images[g] } else { inverses[g] };
    }
    m
}

fn deviation(m: &Matrix4<f64>) -> f64 {
    (m - Matrix4::identity()).abs().max()
}

/// Matrices of the Wirtinger generators: arcs of edges without
/// under-crossings get `R_right · R_left`; the others are solved from
/// relators in which they are the only unknown.
pub fn wirtinger_matrices(
    d: &SpatialGraphDiagram,
    pres: &OrbifoldPresentation,
    real: &MinkowskiRealization,
) -> Result<Vec<Matrix4<f64>>> {
    let mut mats: Vec<Option<Matrix4<f64>>> = alloc::vec![None; pres.generator_count()];
    for (e, edge) in d.edges.iter().enumerate() {
        if pres.arcs[e].len() == 1 {
            let [fr, fl] = edge.faces;
            mats[pres.arcs[e][0]] = Some(reflection(&real.normals[fr]) * reflection(&real.normals[fl]));
        }
    }
    loop {
        let mut progress = false;
        for rel in pres.relators() {
            let unknown: Vec<usize> =
                rel.letters().iter().map(|l| l.unsigned_abs() as usize - 1).filter(|&g| mats[g].is_none()).collect();
            if unknown.len() != 1 {
                continue;
            }
            let g = unknown[0];
            let pos = rel.letters().iter().position(|l| l.unsigned_abs() as usize - 1 == g).unwrap();
            let known: Vec<Matrix4<f64>> = mats.iter().map(|m| m.unwrap_or_else(Matrix4::identity)).collect();
            let a = eval_matrix(&known, &Word::from_letters(rel.letters()[..pos].to_vec()));
            let b = eval_matrix(&known, &Word::from_letters(rel.letters()[pos + 1..].to_vec()));
            // A · g^ε · B = 1.
            let ge = lorentz_inverse(&a) * lorentz_inverse(&b);
            mats[g] = Some(if rel.letters()[pos] > 0 { ge } else { lorentz_inverse(&ge) });
            progress = true;
        }
        if !progress {
            break;
        }
    }
    mats.into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::CertificationFailure("relators do not determine every arc matrix".into()))
}

/// Largest deviation from the identity of any Wirtinger relator under the
/// face-reflection matrices.
pub fn wirtinger_residual(d: &SpatialGraphDiagram, pres: &OrbifoldPresentation, real: &MinkowskiRealization) -> Result<f64> {
    let mats = wirtinger_matrices(d, pres, real)?;
    Ok(pres.relators().iter().map(|r| deviation(&eval_matrix(&mats, r))).fold(0.0, f64::max))
}

/// Deviation from the identity of the retraction image of every relator,
/// evaluated in the faithful representation of the boundary group given by
/// the base vertex's meridian matrices.
pub fn retraction_residuals(
    d: &SpatialGraphDiagram,
    pres: &OrbifoldPresentation,
    r: &Retraction,
    real: &MinkowskiRealization,
) -> Result<Vec<f64>> {
    let mats = wirtinger_matrices(d, pres, real)?;
    let base = &boundary_subgroups(d, pres)[d.base_vertex];
    let k = r.boundary.presentation().presentation.generator_count();
    let gens: Vec<Matrix4<f64>> = base.meridians[..k].iter().map(|m| eval_matrix(&mats, m)).collect();
    // Move a point of the truncating plane near the cone points to the
    // origin, which keeps the entries of the generators small.
    let v = d.base_vertex;
    let t = &real.truncating[v];
    let mut c = [0.0; 4];
    for &e in &d.vertices[v].rotation {
        let [fa, fb] = d.edges[e].faces;
        let mut q = polar_point(&real.normals[fa], &real.normals[fb], t);
        let n = libm::sqrt(-minkowski(&q, &q));
        if q[3] < 0.0 {
            q = q.map(|x| -x);
        }
        for i in 0..4 {
            c[i] += q[i] / n;
        }
    }
    let n = libm::sqrt(-minkowski(&c, &c));
    let boost = lorentz_boost(&c.map(|x| x / n));
    let back = lorentz_inverse(&boost);
    let gens: Vec<Matrix4<f64>> = gens.iter().map(|g| back * g * boost).collect();
    // Triviality is invariant under conjugation, so cyclic reduction is safe.
    Ok(pres.relators().iter().map(|rel| deviation(&eval_matrix(&gens, &r.apply(rel).cyclic_reduce()))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_gram_entries() {
        let g = tetrahedron_gram(2, 3, 7);
        assert!(g.get(0, 1).abs() < 1e-15);
        assert!((g.get(0, 2) + 0.5).abs() < 1e-15);
        assert!((g.get(0, 3) + 0.900_968_867_902_419).abs() < 1e-12);
        assert_eq!(signature_check(&g), (3, 1, 0));
        assert_eq!(signature_check(&GramMatrix::identity(4)), (4, 0, 0));
        for v in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            assert!((g.minor(&v) + 0.0617).abs() < 1e-3);
            assert!(vertex_hyperideal_check(&g, v));
        }
        let e = tetrahedron_gram(2, 3, 6);
        assert!(!vertex_hyperideal_check(&e, [0, 1, 2]));
        assert!(e.minor(&[0, 1, 2]).abs() < 1e-12);
        assert!(!vertex_hyperideal_check(&tetrahedron_gram(2, 2, 3), [0, 1, 2]));
    }

    #[test]
    fn reflection_is_involution() {
        let e = [0.3, 0.4, 1.2, 0.2];
        let n = libm::sqrt(minkowski(&e, &e));
        let e = e.map(|c| c / n);
        let r = reflection(&e);
        assert!(deviation(&(r * r)) < 1e-12);
    }
}
