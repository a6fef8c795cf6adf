// The shooting oracle is only a meaningful cross-check if it shares no
// discretization code with the collocation solver.
#[test]
fn oracle_uses_no_collocation_code() {
    let source =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/oracle.rs")).unwrap();
    for module in ["collocation", "mapping", "operator", "observables"] {
        assert!(
            !source.contains(&format!("crate::{module}"))
                && !source.contains(&format!("super::{module}")),
            "oracle depends on {module}"
        );
    }
}
