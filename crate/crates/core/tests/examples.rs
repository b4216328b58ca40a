mod analyze_sft {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/analyze_sft.rs"));
}

#[test]
fn analyze_sft_runs() {
    analyze_sft::run_example().expect("analyze sft example should run");
}

mod cylinders {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cylinders.rs"));
}

#[test]
fn cylinders_runs() {
    cylinders::run_example().expect("cylinders example should run");
}

mod cover_graphs {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cover_graphs.rs"));
}

#[test]
fn cover_graphs_runs() {
    cover_graphs::run_example().expect("cover graphs example should run");
}

mod markers {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/markers.rs"));
}

#[test]
fn markers_runs() {
    markers::run_example().expect("markers example should run");
}

mod factor_code {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/factor_code.rs"));
}

#[test]
fn factor_code_runs() {
    factor_code::run_example().expect("factor code example should run");
}

mod approximation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/approximation.rs"));
}

#[test]
fn approximation_runs() {
    approximation::run_example().expect("approximation example should run");
}

mod refusals {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/refusals.rs"));
}

#[test]
fn refusals_runs() {
    refusals::run_example().expect("refusals example should run");
}
