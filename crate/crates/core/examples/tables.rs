// Reading a table, checking the structural axioms, and writing it back.

use cusg::carrier::oracle::check_o1_to_o4;
use cusg::cli::format::{parse_table, serialize_table};
use cusg::Carrier;

const C3: &str = "\
CUTABLE v1
n=4
add=
0 1 2 3
1 2 3 3
2 3 3 3
3 3 3 3
leq=
1 1 1 1
0 1 1 1
0 0 1 1
0 0 0 1
";

pub fn run_example() {
    let table = parse_table(C3).expect("well-formed document");
    let c = Carrier::finite(table.clone()).expect("valid table");
    assert_eq!(c, Carrier::chain(3));

    let report = check_o1_to_o4(&c, 0);
    println!("{} certified: {}", c.describe(), report.certified());
    assert!(report.certified());

    assert_eq!(serialize_table(&table), C3);

    // a malformed row reports where it went wrong
    let broken = C3.replace("1 2 3 3", "1 x 3 3");
    let err = parse_table(&broken).unwrap_err();
    println!("broken document: {err}");
}

fn main() {
    run_example();
}
