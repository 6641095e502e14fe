//! Shared test fixtures: the graph corpus and an independent truncated-Taylor
//! matrix-exponential oracle for cross-validating the spectral evolution.

use num::complex::Complex64;
use twinwalk::graph::{generate_family, join, Family, Rat, WeightedGraph};
use twinwalk::matrix::{CMatrix, Matrix};

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(p.into(), q.into())
}

pub fn complete(m: usize, omega: Rat, eta: Rat) -> WeightedGraph {
    generate_family(&Family::Complete { m, omega, eta }).unwrap()
}

pub fn family(f: Family) -> WeightedGraph {
    generate_family(&f).unwrap()
}

/// A weighted star whose first two leaves carry weight-2 edges: vertices 1
/// and 2 are twins with η = 0, vertex 3 is not their twin.
pub fn weighted_star() -> WeightedGraph {
    WeightedGraph::from_text("n 4\ne 0 1 2\ne 0 2 2\ne 0 3 1\n").unwrap()
}

/// The standard corpus: every family the acceptance criteria touch plus
/// weighted and loopy variants.
pub fn corpus() -> Vec<(String, WeightedGraph)> {
    let mut graphs: Vec<(String, WeightedGraph)> = Vec::new();
    let mut push = |name: &str, g: WeightedGraph| graphs.push((name.to_string(), g));

    push("K2", complete(2, rat(0, 1), rat(1, 1)));
    push("K2(2,3)", complete(2, rat(2, 1), rat(3, 1)));
    push("K2(-1,1/2)", complete(2, rat(-1, 1), rat(1, 2)));
    push("K3", complete(3, rat(0, 1), rat(1, 1)));
    push("K3(1/2,1)", complete(3, rat(1, 2), rat(1, 1)));
    push("K5", complete(5, rat(0, 1), rat(1, 1)));
    push("P3", family(Family::Path { n: 3 }));
    push("P4", family(Family::Path { n: 4 }));
    push("P5", family(Family::Path { n: 5 }));
    push("C4", family(Family::Cycle { n: 4 }));
    push("C5", family(Family::Cycle { n: 5 }));
    push("C6", family(Family::Cycle { n: 6 }));
    push("K_{1,3}", family(Family::Star { leaves: 3 }));
    push("K_{1,4}", family(Family::Star { leaves: 4 }));
    push("K_{2,3}", family(Family::CompleteBipartite { m: 2, n: 3 }));
    push("K_{2,4}", family(Family::CompleteBipartite { m: 2, n: 4 }));
    push("K_{3,3}", family(Family::CompleteBipartite { m: 3, n: 3 }));
    push("K_{1,2,2}", family(Family::CompleteMultipartite { parts: vec![1, 2, 2] }));
    push("cocktail(2)", family(Family::CocktailParty { m: 2 }));
    push("cocktail(3)", family(Family::CocktailParty { m: 3 }));
    push("cocktail(4)", family(Family::CocktailParty { m: 4 }));
    push("K4\\e", family(Family::CompleteMinusEdge { m: 4 }));
    push("K5\\e", family(Family::CompleteMinusEdge { m: 5 }));
    push("K6\\e", family(Family::CompleteMinusEdge { m: 6 }));
    push("figure2", family(Family::Figure2));
    push(
        "K2vP3",
        join(&complete(2, rat(0, 1), rat(1, 1)), &family(Family::Path { n: 3 })),
    );
    push("weighted_star", weighted_star());
    graphs
}

fn cmatrix_scale(m: &mut CMatrix, c: Complex64) {
    let n = m.n();
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] *= c;
        }
    }
}

fn cmatrix_add(a: &mut CMatrix, b: &CMatrix) {
    let n = a.n();
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] += b[(i, j)];
        }
    }
}

/// exp(itM) by scaling-and-squaring with a truncated Taylor series; wholly
/// independent of the spectral decomposition path it cross-checks.
pub fn expm_taylor(m: &Matrix, t: f64) -> CMatrix {
    let n = m.n();
    let norm = m.max_abs() * (n as f64) * t.abs();
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let tt = t / 2f64.powi(squarings as i32);
    // X = i·tt·M
    let mut x = CMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            x[(i, j)] = Complex64::new(0.0, tt * m[(i, j)]);
        }
    }
    let mut sum = CMatrix::identity(n);
    let mut term = CMatrix::identity(n);
    for k in 1..200 {
        term = term.mul(&x);
        cmatrix_scale(&mut term, Complex64::new(1.0 / k as f64, 0.0));
        cmatrix_add(&mut sum, &term);
        let mag = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| term[(i, j)].norm())
            .fold(0.0f64, f64::max);
        if mag < 1e-20 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.mul(&sum);
    }
    sum
}
