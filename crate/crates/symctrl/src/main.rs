use clap::Parser;
use symctrl::cli::{main_with_args, CliArgs};

fn main() {
    std::process::exit(main_with_args(CliArgs::parse()));
}
