fn main() -> std::process::ExitCode {
    chulogic::cli::main()
}
