fn main() {
    std::process::exit(noderel::cli::main_entry());
}
