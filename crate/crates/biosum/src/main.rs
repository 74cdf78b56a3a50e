fn main() {
    std::process::exit(biosum::cli::main_entry());
}
