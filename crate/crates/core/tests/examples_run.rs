mod comparison_constants {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/comparison_constants.rs"));
}
mod bessel_identity {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/bessel_identity.rs"));
}
mod sup_norm_benchmark {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sup_norm_benchmark.rs"));
}
mod chip_decomposition {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/chip_decomposition.rs"));
}
mod sphere_to_paraboloid {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/sphere_to_paraboloid.rs"));
}
mod antipodal_pairs {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/antipodal_pairs.rs"));
}
mod power_iteration {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/power_iteration.rs"));
}
mod quadrature_grids {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/quadrature_grids.rs"));
}

#[test]
fn comparison_constants_example_runs() {
    comparison_constants::run_example().expect("comparison constants example should run");
}

#[test]
fn bessel_identity_example_runs() {
    bessel_identity::run_example().expect("bessel identity example should run");
}

#[test]
fn sup_norm_benchmark_example_runs() {
    sup_norm_benchmark::run_example().expect("sup norm example should run");
}

#[test]
fn chip_decomposition_example_runs() {
    chip_decomposition::run_example().expect("chip decomposition example should run");
}

#[test]
fn sphere_to_paraboloid_example_runs() {
    sphere_to_paraboloid::run_example().expect("sphere to paraboloid example should run");
}

#[test]
fn antipodal_pairs_example_runs() {
    antipodal_pairs::run_example().expect("antipodal pairs example should run");
}

#[test]
fn power_iteration_example_runs() {
    power_iteration::run_example().expect("power iteration example should run");
}

#[test]
fn quadrature_grids_example_runs() {
    quadrature_grids::run_example().expect("quadrature grids example should run");
}
