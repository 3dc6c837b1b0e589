use clap::Parser;
use hhtkit::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out.json).expect("json value"));
    } else {
        print!("{}", out.text);
    }
    std::process::exit(out.code);
}
