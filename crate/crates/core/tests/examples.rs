macro_rules! example_test {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect("example runs");
        }
    };
}

example_test!(words_and_projection, "words_and_projection.rs");
example_test!(check_admissibility, "check_admissibility.rs");
example_test!(solve_root, "solve_root.rs");
example_test!(reconstruct_map, "reconstruct_map.rs");
example_test!(growth_rate, "growth_rate.rs");
example_test!(estimate_stream, "estimate_stream.rs");
example_test!(prime_tester, "prime_tester.rs");
example_test!(plot_data, "plot_data.rs");
example_test!(search_null, "search_null.rs");
example_test!(embed_cli, "embed_cli.rs");
