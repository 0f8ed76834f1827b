//! Exhaustive cross-checks on every small grade.

use fatgraph_core::enumeration::{enumerate_by_rotation_systems, families_within, Enumerator};
use fatgraph_core::{boundary, boundary_of_graph, Grade};

/// Every `(g, m, k)` whose graphs have at most `max_darts` darts.
fn small_grades(max_darts: usize) -> Vec<Grade> {
    let mut out = Vec::new();
    for genus in 0..=max_darts / 4 {
        for punctures in 1..=max_darts {
            for k in 1..=max_darts {
                let grade = Grade::new(genus, punctures, k);
                if let Some(e) = grade.edges() {
                    if 2 * e <= max_darts && 2 * e >= 3 * k && 2 * genus + punctures >= 3 {
                        out.push(grade);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn expansion_matches_rotation_systems() {
    let mut e = Enumerator::new(12);
    let grades = small_grades(12);
    assert!(grades.len() > 20);
    for grade in grades {
        let by_expansion = e.all_graphs(grade.genus, grade.punctures, grade.vertices).unwrap();
        let by_rotation = enumerate_by_rotation_systems(grade.genus, grade.punctures, grade.vertices);
        let a: Vec<(&[u32], bool)> = by_expansion.iter().map(|c| (c.code(), c.is_zero())).collect();
        let b: Vec<(&[u32], bool)> = by_rotation.iter().map(|c| (c.code(), c.is_zero())).collect();
        assert_eq!(a, b, "{grade}");
    }
}

#[test]
fn d_squared_on_every_small_basis_graph() {
    let mut e = Enumerator::new(14);
    for grade in small_grades(14) {
        for c in e.basis(grade.genus, grade.punctures, grade.vertices).unwrap().graphs {
            let d = boundary_of_graph(c.graph(), &c.orientation()).unwrap();
            assert!(boundary(&d).is_zero(), "{grade}");
        }
    }
}

#[test]
fn betti_tables_are_consistent() {
    let mut e = Enumerator::default();
    for (g, m) in families_within(16) {
        let table = e.betti_numbers(g, m).unwrap();
        assert_eq!(table.euler_characteristic(), table.betti_euler_characteristic(), "({g}, {m})");
        assert_eq!(table.euler_characteristic(), e.euler_characteristic(g, m).unwrap());
        for (i, row) in table.rows.iter().enumerate() {
            let incoming = if i + 1 < table.rows.len() { table.rows[i + 1].rank } else { 0 };
            assert!(row.rank + incoming <= row.dim, "({g}, {m}) k = {}", row.k);
            assert_eq!(row.cohomological_degree, (4 * g + 2 * m) as i64 - 4 - row.k as i64);
        }
    }
}

#[test]
fn small_euler_characteristics() {
    let mut e = Enumerator::default();
    let got: Vec<i64> = (1..=4).map(|m| e.euler_characteristic(1, m).unwrap()).collect();
    assert_eq!(got, vec![1, 1, 1, 0]);
    // the sphere with three unordered punctures has the homology of a point
    assert_eq!(e.betti_numbers(0, 3).unwrap().betti().iter().sum::<usize>(), 1);
}
