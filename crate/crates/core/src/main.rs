fn main() -> std::process::ExitCode {
    collective_qkd::cli::main()
}
