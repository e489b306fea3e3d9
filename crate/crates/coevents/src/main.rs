fn main() {
    std::process::exit(coevents::cli::cli_main(std::env::args()));
}
