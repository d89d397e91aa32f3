//! Regenerates the `corpus/` directory: a fixed set of small algebras over
//! F_2, F_3, F_5 with modules, expectation files, and one deliberately
//! broken presentation. Everything is constructed from closed-form product
//! rules (matrix units, truncated polynomials, cyclic groups), so the
//! output is deterministic and `git diff` after a rerun should be empty.
//!
//! Usage: `cargo run --bin gen_corpus [out_dir]` (default `corpus`).

use std::path::Path;
use std::sync::Arc;

use assocloc::algebra::AlgebraPresentation;
use assocloc::field::PrimeField;
use assocloc::format::{serialize_algebra, serialize_module};
use assocloc::mat::Mat;
use assocloc::module::ModuleRep;

fn unit_vec(dim: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

/// Full matrix algebra M_n(F_p); basis element `i*n + j` is the matrix
/// unit e_ij, so e_ij · e_kl = δ_jk e_il.
fn matrix_algebra(p: u64, n: usize, name: &str) -> AlgebraPresentation {
    let field = PrimeField::new(p).unwrap();
    let dim = n * n;
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("e{i}{j}")))
        .collect();
    let mut unit = vec![0; dim];
    for i in 0..n {
        unit[i * n + i] = 1;
    }
    let mut table = vec![vec![vec![0; dim]; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    if j == k {
                        table[i * n + j][k * n + l][i * n + l] = 1;
                    }
                }
            }
        }
    }
    AlgebraPresentation::new(field, name, names, unit, &table)
}

/// The pair list (i, j), i ≤ j, in lexicographic order — the basis
/// indexing shared by `upper_triangular` and its simple modules.
fn ut_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Upper-triangular matrices UT_n(F_p) on the matrix-unit basis.
fn upper_triangular(p: u64, n: usize, name: &str) -> AlgebraPresentation {
    let field = PrimeField::new(p).unwrap();
    let pairs = ut_pairs(n);
    let dim = pairs.len();
    let index = |i: usize, j: usize| pairs.iter().position(|&q| q == (i, j)).unwrap();
    let names = pairs.iter().map(|(i, j)| format!("e{i}{j}")).collect();
    let mut unit = vec![0; dim];
    for i in 0..n {
        unit[index(i, i)] = 1;
    }
    let mut table = vec![vec![vec![0; dim]; dim]; dim];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                table[a][b][index(i, l)] = 1;
            }
        }
    }
    AlgebraPresentation::new(field, name, names, unit, &table)
}

/// F_p[x]/(x^d − r(x)) where `rel` lists the coefficients of r, so
/// `rel = [0, 0]` is the dual-number relation x² = 0 and `rel = [1, 1]`
/// is the F_4 relation x² = 1 + x.
fn poly_quotient(p: u64, name: &str, rel: &[u64]) -> AlgebraPresentation {
    let field = PrimeField::new(p).unwrap();
    let d = rel.len();
    // coordinates of x^k for k < 2d−1, reduced modulo the relation
    let mut pows: Vec<Vec<u64>> = Vec::new();
    for k in 0..(2 * d - 1) {
        if k < d {
            pows.push(unit_vec(d, k));
        } else {
            let prev = pows[k - 1].clone();
            let mut c = vec![0; d];
            for i in 0..d - 1 {
                c[i + 1] = prev[i];
            }
            let top = prev[d - 1];
            for i in 0..d {
                c[i] = (c[i] + top * rel[i]) % p;
            }
            pows.push(c);
        }
    }
    let names = (0..d)
        .map(|k| match k {
            0 => "one".to_string(),
            1 => "x".to_string(),
            _ => format!("x{k}"),
        })
        .collect();
    let table: Vec<Vec<Vec<u64>>> =
        (0..d).map(|i| (0..d).map(|j| pows[i + j].clone()).collect()).collect();
    AlgebraPresentation::new(field, name, names, unit_vec(d, 0), &table)
}

/// The group algebra F_p[C_n] on the group-element basis.
fn cyclic_group_algebra(p: u64, n: usize, name: &str) -> AlgebraPresentation {
    let field = PrimeField::new(p).unwrap();
    let names = (0..n)
        .map(|k| match k {
            0 => "one".to_string(),
            1 => "g".to_string(),
            _ => format!("g{k}"),
        })
        .collect();
    let mut table = vec![vec![vec![0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j][(i + j) % n] = 1;
        }
    }
    AlgebraPresentation::new(field, name, names, unit_vec(n, 0), &table)
}

/// F_p itself as a one-dimensional algebra.
fn prime_field_algebra(p: u64, name: &str) -> AlgebraPresentation {
    let field = PrimeField::new(p).unwrap();
    AlgebraPresentation::new(field, name, vec!["one".to_string()], vec![1], &[vec![vec![1]]])
}

/// F_p × F_p on the idempotent basis {u, v}: u² = u, v² = v, uv = 0.
fn field_square(p: u64, name: &str) -> AlgebraPresentation {
    let field = PrimeField::new(p).unwrap();
    let table = vec![
        vec![vec![1, 0], vec![0, 0]],
        vec![vec![0, 0], vec![0, 1]],
    ];
    AlgebraPresentation::new(
        field,
        name,
        vec!["u".to_string(), "v".to_string()],
        vec![1, 1],
        &table,
    )
}

/// The natural row-vector module of M_n(F_p): basis element e_ij acts as
/// the matrix unit itself.
fn natural_module(alg: &Arc<AlgebraPresentation>, n: usize, name: &str) -> ModuleRep {
    let f = alg.field();
    let action = (0..n * n)
        .map(|a| {
            let (i, j) = (a / n, a % n);
            let mut rows = vec![vec![0; n]; n];
            rows[i][j] = 1;
            Mat::from_rows(f, &rows)
        })
        .collect();
    ModuleRep::new(Arc::clone(alg), name, action).expect("natural module satisfies the relations")
}

/// The k-th one-dimensional simple of UT_n: e_kk acts as 1, everything
/// else as 0.
fn ut_simple(alg: &Arc<AlgebraPresentation>, n: usize, k: usize, name: &str) -> ModuleRep {
    let f = alg.field();
    let action = ut_pairs(n)
        .into_iter()
        .map(|(i, j)| Mat::from_rows(f, &[vec![u64::from(i == j && i == k)]]))
        .collect();
    ModuleRep::new(Arc::clone(alg), name, action).expect("diagonal character is a module")
}

/// A one-dimensional module given by a character value per basis element.
fn character_module(alg: &Arc<AlgebraPresentation>, values: &[u64], name: &str) -> ModuleRep {
    let f = alg.field();
    let action = values.iter().map(|&v| Mat::from_rows(f, &[vec![v]])).collect();
    ModuleRep::new(Arc::clone(alg), name, action).expect("character must respect the relations")
}

/// A presentation that fails associativity: x·x = y but y·x = 0 while
/// x·y = 1, so (x·x)·x ≠ x·(x·x). `validate` must reject it with exit 2.
const BROKEN: &str = "\
# Not an algebra: (x*x)*x = y*x = 0 but x*(x*x) = x*y = one.
algebra broken p=2 dim=3
basis one x y
unit 1 0 0
mul 0 0 : 1 0 0
mul 0 1 : 0 1 0
mul 0 2 : 0 0 1
mul 1 0 : 0 1 0
mul 1 1 : 0 0 1
mul 1 2 : 1 0 0
mul 2 0 : 0 0 1
mul 2 1 : 0 0 0
mul 2 2 : 0 0 0
";

/// Expectation body for presentations with nilpotents: the comparison
/// with the classical local ring is a documented mismatch there.
const NILPOTENT_EXPECT: &str = "\
# A_M collapses the nilradical, the classical local ring keeps it.
*lemma_AM_iso_Am* fail
";

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = args.first().map(String::as_str).unwrap_or("corpus");
    let dir = Path::new(out);
    std::fs::create_dir_all(dir).expect("create output directory");

    let mut files: Vec<(String, String)> = Vec::new();
    let mut algebra = |a: AlgebraPresentation| -> Arc<AlgebraPresentation> {
        a.validate().expect("generated presentations must be algebras");
        files.push((format!("{}.alg", a.name()), serialize_algebra(&a)));
        Arc::new(a)
    };

    let f5 = algebra(prime_field_algebra(5, "f5"));
    let f4 = algebra(poly_quotient(2, "f4", &[1, 1]));
    let f9 = algebra(poly_quotient(3, "f9", &[2, 0]));
    let f2x2 = algebra(poly_quotient(2, "f2x2", &[0, 0]));
    let _f2x3 = algebra(poly_quotient(2, "f2x3", &[0, 0, 0]));
    let _f5x2 = algebra(poly_quotient(5, "f5x2", &[0, 0]));
    let f2xf2 = algebra(field_square(2, "f2xf2"));
    let _f5xf5 = algebra(field_square(5, "f5xf5"));
    let gc2f2 = algebra(cyclic_group_algebra(2, 2, "gc2f2"));
    let _gc3f3 = algebra(cyclic_group_algebra(3, 3, "gc3f3"));
    let m2f2 = algebra(matrix_algebra(2, 2, "m2f2"));
    let m2f3 = algebra(matrix_algebra(3, 2, "m2f3"));
    let m3f2 = algebra(matrix_algebra(2, 3, "m3f2"));
    let ut2f2 = algebra(upper_triangular(2, 2, "ut2f2"));
    let ut3f2 = algebra(upper_triangular(2, 3, "ut3f2"));

    let mut module = |m: ModuleRep| {
        files.push((format!("{}.mod", m.name()), serialize_module(&m)));
    };
    module(natural_module(&m2f2, 2, "m2f2_nat"));
    module(natural_module(&m2f3, 2, "m2f3_nat"));
    module(natural_module(&m3f2, 3, "m3f2_nat"));
    module(ut_simple(&ut2f2, 2, 0, "ut2f2_s1"));
    module(ut_simple(&ut2f2, 2, 1, "ut2f2_s2"));
    module(ut_simple(&ut3f2, 3, 0, "ut3f2_s1"));
    module(ut_simple(&ut3f2, 3, 1, "ut3f2_s2"));
    module(ut_simple(&ut3f2, 3, 2, "ut3f2_s3"));
    module(ModuleRep::regular(&f4));
    module(ModuleRep::regular(&f9));
    module(ModuleRep::regular(&f5));
    module(character_module(&f2xf2, &[1, 0], "f2xf2_s1"));
    module(character_module(&f2xf2, &[0, 1], "f2xf2_s2"));
    module(character_module(&f2x2, &[1, 0], "f2x2_s1"));
    module(character_module(&gc2f2, &[1, 1], "gc2f2_triv"));

    files.push(("broken.alg".to_string(), BROKEN.to_string()));
    for name in ["f2x2", "f2x3", "f5x2", "gc2f2", "gc3f3"] {
        files.push((format!("{name}.expect"), NILPOTENT_EXPECT.to_string()));
    }

    for (name, text) in &files {
        std::fs::write(dir.join(name), text).expect("write corpus file");
    }
    println!("wrote {} files to {}", files.len(), dir.display());
}
