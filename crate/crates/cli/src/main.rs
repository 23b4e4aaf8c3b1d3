fn main() {
    std::process::exit(centrality_lab::run_cli(std::env::args_os()));
}
