fn main() {
    std::process::exit(prefix_graphs::cli::main());
}
