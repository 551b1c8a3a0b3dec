macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect(stringify!($name));
        }
    };
}

example!(knowledge_operators);
example!(counterexamples);
example!(selection_functions);
example!(preferential_frames);
example!(model_checking);
example!(event_formulas);
example!(campaigns);
