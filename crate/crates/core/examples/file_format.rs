//! Parse a document, run commands on it, and print its canonical form.

use modfour::cli::{parse, run, serialize, Command, Flags};

const DOC: &str = "
# a hexagon turned by a third of a revolution
complex C6
vertices a b c d e f
facet a b
facet b c
facet c d
facet d e
facet e f
facet a f
end

action third on C6 p 3
map a -> c
map c -> e
map e -> a
map b -> d
map d -> f
map f -> b
end
";

fn main() {
    let doc = parse(DOC).expect("valid document");
    for cmd in [Command::Cohomology, Command::Lefschetz, Command::Theorem2] {
        let out = run(cmd, &doc, &Flags::default()).expect("runs");
        print!("{}", out.text);
        println!("(exit {})", out.code);
    }
    print!("{}", serialize(&doc));
}
