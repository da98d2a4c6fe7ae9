//! Write and read the plain, colored and matching file formats.

use linkagelab::format::{format_colored, parse_colored, parse_graph, parse_matching, write_graph, read_graph};
use linkagelab::graph::{ColoredGraph, Graph};

fn main() -> linkagelab::Result<()> {
    let dir = std::env::temp_dir().join("linkagelab-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("petersen.graph");
    write_graph(&Graph::petersen(), &path)?;
    let back = read_graph(&path)?;
    println!("{}: {} vertices, {} edges", path.display(), back.n(), back.m());

    let colored = ColoredGraph::new(Graph::cycle(4), vec![0, 1, 0, 1])?;
    let text = format_colored(&colored);
    print!("{text}");
    assert_eq!(parse_colored(&text)?, colored);

    println!("{:?}", parse_matching("# pairs\n0 3\n1 2\n")?.edges());
    match parse_graph("p 3 1\ne 0 7\n") {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
