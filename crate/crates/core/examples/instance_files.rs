//! Writes one instance in each supported text format to a directory, reads
//! it back and shows what a malformed file reports.
//!
//! ```text
//! cargo run --example instance_files [out_dir]
//! ```

use std::fs;
use std::path::PathBuf;

use fuss::harness::instance_rng;
use fuss::problems::cuboid::CuboidFunctionSpec;
use fuss::problems::sat::CnfFormula;
use fuss::problems::scp::ScpInstance;
use fuss::problems::tsp::TspInstance;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("fuss_instances"));
    fs::create_dir_all(&dir)?;
    let mut rng = instance_rng(1, 0);

    let cuboid = CuboidFunctionSpec::generate(&mut rng);
    fs::write(dir.join("cuboid.txt"), cuboid.to_text())?;
    let back = CuboidFunctionSpec::from_text(&fs::read_to_string(dir.join("cuboid.txt"))?)?;
    println!("cuboid.txt: 16 boxes, true maximum {}", back.true_maximum);

    let matrix = TspInstance::random(25, &mut rng)?;
    fs::write(dir.join("matrix.tsp"), matrix.to_text())?;
    let back = TspInstance::parse(&fs::read_to_string(dir.join("matrix.tsp"))?)?;
    println!(
        "matrix.tsp: {} cities, identical: {}",
        back.len(),
        back == matrix
    );

    let (formula, planted) = CnfFormula::random_planted(40, 170, &mut rng);
    fs::write(dir.join("planted.cnf"), formula.to_dimacs())?;
    let back = CnfFormula::parse_dimacs(&fs::read_to_string(dir.join("planted.cnf"))?)?;
    println!(
        "planted.cnf: {} vars, {} clauses, planted assignment satisfies {}",
        back.num_vars(),
        back.num_clauses(),
        back.count_satisfied(&planted)
    );

    let scp = ScpInstance::new(
        vec![3.0, 2.0, 4.0, 1.0],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )?;
    fs::write(dir.join("cover.txt"), scp.to_orlib())?;
    let back = ScpInstance::parse_orlib(&fs::read_to_string(dir.join("cover.txt"))?)?;
    println!(
        "cover.txt: {} rows x {} columns",
        back.rows(),
        back.columns()
    );

    let broken = "p cnf 3 2\n1 -2 3 0\n2 x 0\n";
    match CnfFormula::parse_dimacs(broken) {
        Ok(_) => println!("unexpectedly parsed"),
        Err(e) => println!("malformed DIMACS: {e}"),
    }
    println!("files in {}", dir.display());
    Ok(())
}
