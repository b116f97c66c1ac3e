fn main() {
    std::process::exit(cvlink_cli::main_entry());
}
