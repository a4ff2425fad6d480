//! Drives the command-line front end in-process.

use chaoscert::cli::{run, Cli};
use clap::Parser;

fn main() {
    let dir = std::env::temp_dir().join("chaoscert-example-demo");
    let dir = dir.to_string_lossy();
    for argv in [
        vec![
            "chaoscert",
            "words",
            "--length",
            "5",
            "--count-only",
            "--format",
            "csv",
        ],
        vec!["chaoscert", "demo", "--out", &dir],
    ] {
        let cli = Cli::parse_from(&argv);
        let code = run(cli, &mut std::io::stdout(), &mut std::io::stderr());
        println!("[{}] exit {code}\n", argv[1]);
    }
}
