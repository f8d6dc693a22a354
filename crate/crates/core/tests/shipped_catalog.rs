use orbimilnor::catalog::{brieskorn_pham_catalog, CatalogBounds, CatalogFile};

#[test]
fn shipped_catalog_matches_enumeration() {
    let text = include_str!("../../../catalogs/bp_small.json");
    let shipped = CatalogFile::parse(text).unwrap();
    assert_eq!(shipped, brieskorn_pham_catalog(CatalogBounds { max_vars: 3, max_det: 30 }));
}
