macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(partition_table, "partition_table.rs");
example!(operator_algebra, "operator_algebra.rs");
example!(verify_mub, "verify_mub.rs");
example!(encode_and_measure, "encode_and_measure.rs");
example!(seeded_experiment, "seeded_experiment.rs");
example!(cross_validate, "cross_validate.rs");

#[test]
fn partition_table_example_runs() {
    partition_table::run_example(3).unwrap();
    partition_table::run_example(7).unwrap();
    assert!(partition_table::run_example(6).is_err());
}

#[test]
fn operator_algebra_example_runs() {
    operator_algebra::run_example().unwrap();
}

#[test]
fn verify_mub_example_runs() {
    verify_mub::run_example(&[2, 3, 5]).unwrap();
}

#[test]
fn encode_and_measure_example_runs() {
    encode_and_measure::run_example(5, 2, 3).unwrap();
    encode_and_measure::run_example(2, 2, 1).unwrap();
}

#[test]
fn seeded_experiment_example_runs() {
    seeded_experiment::run_example(300, 1).unwrap();
}

#[test]
fn cross_validate_example_runs() {
    cross_validate::run_example(&[2, 3]).unwrap();
}
