#[path = "common/oracle.rs"]
mod oracle;

use oracle::{all_dims, brute_force, searched};

#[test]
fn pruned_search_matches_brute_force() {
    let mut total = 0;
    for dims in all_dims() {
        let want = brute_force(&dims);
        total += want.len();
        assert_eq!(searched(&dims, true), want, "pruned, dims {dims:?}");
        assert_eq!(searched(&dims, false), want, "unpruned, dims {dims:?}");
    }
    // trivial, Z2, Z3, Rep(S3) twice (one per placement of the 2)
    assert_eq!(total, 5);
}
