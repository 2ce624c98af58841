use walgebra_bench::walgebra::characters::denominator_identity;
use walgebra_bench::walgebra::free_fields::preset;

#[test]
fn bench_inputs_are_valid() {
    let e = preset("affine-sl2").unwrap();
    assert!(e.parse_state("e12(-1)h1(-2)|0>").is_ok());
    assert!(e.parse_state("e21(-2)h1(-1)|0>").is_ok());
    assert!(denominator_identity(2, 20).unwrap().matches_infinite_product);
}
