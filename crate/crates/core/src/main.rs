fn main() {
    std::process::exit(grpdco::cli::main_entry());
}
