//! Every example in `examples/` runs to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run_example();
        }
    };
}

example!(axioms);
example!(catalog);
example!(dimension);
example!(limits);
example!(lowenheim);
example!(morphisms);
example!(permanence);
example!(soft_part);
example!(sub_cu);
example!(tables);
