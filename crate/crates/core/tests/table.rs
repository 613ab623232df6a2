use oarray::table::{min_rows_table, TableOptions};

/// Published minima of simple binary arrays, rows k = 1..=13, columns
/// t = 1..=7; 0 marks cells above the diagonal.
const PUBLISHED: [[u128; 7]; 13] = [
    [2, 0, 0, 0, 0, 0, 0],
    [2, 4, 0, 0, 0, 0, 0],
    [2, 4, 8, 0, 0, 0, 0],
    [2, 8, 8, 16, 0, 0, 0],
    [2, 8, 16, 16, 32, 0, 0],
    [2, 8, 16, 32, 32, 64, 0],
    [2, 8, 16, 64, 64, 64, 128],
    [2, 12, 16, 64, 128, 128, 128],
    [2, 12, 24, 128, 128, 256, 256],
    [2, 12, 24, 128, 256, 512, 512],
    [2, 12, 24, 128, 256, 512, 1024],
    [2, 16, 24, 128, 256, 768, 1024],
    [2, 16, 32, 128, 256, 1024, 1536],
];

#[test]
fn intervals_contain_published_values() {
    let cells = min_rows_table(13, 7, &TableOptions::default()).unwrap();
    let open: Vec<(usize, usize)> = cells.iter().filter(|c| !c.resolved).map(|c| (c.k, c.t)).collect();
    for c in &cells {
        let want = PUBLISHED[c.k - 1][c.t - 1];
        assert!(c.lower <= want, "({}, {}): lower {} > {want}", c.k, c.t, c.lower);
        if let Some(u) = c.upper {
            assert!(u >= want, "({}, {}): upper {u} < {want}", c.k, c.t);
        }
        if let Some(v) = c.value() {
            assert_eq!(v, want, "({}, {})", c.k, c.t);
        }
        assert!(!c.provenance.is_empty());
    }
    // Hadamard-order cells, cells with external lower bounds, and the
    // two LP-tight cells whose arrays are not built here.
    let expected_open = [
        (8, 2), (9, 2), (9, 3), (9, 4), (10, 2), (10, 3), (10, 4), (10, 5), (11, 2), (11, 3),
        (11, 4), (11, 5), (12, 3), (12, 4), (12, 5), (12, 6), (13, 5), (13, 7),
    ];
    assert_eq!(open, expected_open);
}

#[test]
fn strength_four_chain_is_resolved() {
    let cells = min_rows_table(15, 5, &TableOptions::default()).unwrap();
    for k in 13..=15 {
        let c = cells.iter().find(|c| c.k == k && c.t == 4).unwrap();
        assert_eq!(c.value(), Some(128), "k = {k}");
    }
    for k in 14..=15 {
        let c = cells.iter().find(|c| c.k == k && c.t == 5).unwrap();
        assert_eq!(c.value(), Some(256), "k = {k}");
    }
}

#[test]
fn search_closes_the_first_hadamard_cell() {
    let opts = TableOptions {
        lp: false,
        search_max_k: 8,
        ..Default::default()
    };
    let cells = min_rows_table(8, 2, &opts).unwrap();
    assert!(cells.iter().all(|c| c.resolved));
    let c = cells.iter().find(|c| c.k == 8 && c.t == 2).unwrap();
    assert_eq!(c.value(), Some(12));
    assert!(c.provenance.iter().any(|p| p.claim.contains("search found")));
}
