#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "qswap/protocol.hpp"

namespace qswap {

SpinDirection AxisSpec::direction() const {
    switch (kind) {
        case Kind::X: return SpinDirection::x_axis();
        case Kind::Y: return SpinDirection::y_axis();
        case Kind::Z: return SpinDirection::z_axis();
        case Kind::Custom: return SpinDirection::normalized(x, y, z);
    }
    throw std::invalid_argument("AxisSpec: bad kind");
}

bool AxisSpec::operator==(const AxisSpec& o) const {
    if (kind != o.kind) return false;
    if (kind != Kind::Custom) return true;
    return x == o.x && y == o.y && z == o.z;
}

bool PrepareStmt::operator==(const PrepareStmt& o) const {
    return source == o.source && (source != Source::Bell || bell == o.bell) &&
           labels == o.labels && ket_pattern == o.ket_pattern;
}

bool MeasureStmt::operator==(const MeasureStmt& o) const {
    return is_bell == o.is_bell && (is_bell || axis == o.axis) && targets == o.targets;
}

bool MetricSpec::operator==(const MetricSpec& o) const {
    if (kind != o.kind) return false;
    if (labels_a != o.labels_a || labels_b != o.labels_b) return false;
    if (kind == Kind::Correlator) return axis_a == o.axis_a && axis_b == o.axis_b;
    return true;
}

bool ReportStmt::operator==(const ReportStmt& o) const { return metric == o.metric; }

bool ProtocolProgram::operator==(const ProtocolProgram& o) const {
    return statements == o.statements;
}

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Semi, Pipe, Plus, Minus, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourcePos pos;
};

// Internal unwind carrying the first error; parse() catches it.
struct ParseFail {
    ParseError error;
};

[[noreturn]] void fail(const Token& at, const std::string& message) {
    throw ParseFail{ParseError{at.pos.line, at.pos.column, message, at.text}};
}

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        SourcePos after_last{1, 1};
        for (;;) {
            skip_blank();
            Token t;
            t.pos = {line_, col_};
            if (at_ >= src_.size()) {
                t.kind = Tok::End;
                t.pos = after_last;  // end-of-input errors point past the last token
                out.push_back(t);
                return out;
            }
            const char c = src_[at_];
            if (std::isalpha(static_cast<unsigned char>(c))) {
                while (at_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[at_])))
                    t.text += take();
                t.kind = Tok::Ident;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = Tok::Number;
                t.text = lex_number();
            } else {
                switch (c) {
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case ',': t.kind = Tok::Comma; break;
                    case ';': t.kind = Tok::Semi; break;
                    case '|': t.kind = Tok::Pipe; break;
                    case '+': t.kind = Tok::Plus; break;
                    case '-': t.kind = Tok::Minus; break;
                    default:
                        t.text = std::string(1, c);
                        throw ParseFail{ParseError{t.pos.line, t.pos.column,
                                                   "unexpected character", t.text}};
                }
                t.text = std::string(1, take());
            }
            after_last = {line_, col_};
            out.push_back(std::move(t));
        }
    }

private:
    char take() {
        const char c = src_[at_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_blank() {
        while (at_ < src_.size()) {
            const char c = src_[at_];
            if (c == '#') {
                while (at_ < src_.size() && src_[at_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                return;
            }
        }
    }

    std::string lex_number() {
        std::string text;
        while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_])))
            text += take();
        if (at_ < src_.size() && src_[at_] == '.') {
            text += take();
            while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_])))
                text += take();
        }
        if (at_ < src_.size() && (src_[at_] == 'e' || src_[at_] == 'E')) {
            text += take();
            if (at_ < src_.size() && (src_[at_] == '+' || src_[at_] == '-')) text += take();
            while (at_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[at_])))
                text += take();
        }
        return text;
    }

    std::string_view src_;
    std::size_t at_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ProtocolProgram run() {
        ProtocolProgram prog;
        while (peek().kind != Tok::End) prog.statements.push_back(statement());
        return prog;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        const std::size_t i = std::min(at_ + ahead, toks_.size() - 1);
        return toks_[i];
    }
    const Token& advance() { return toks_[std::min(at_++, toks_.size() - 1)]; }

    const Token& expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(peek(), std::string("expected ") + what);
        return advance();
    }

    bool accept_word(const char* word) {
        if (peek().kind == Tok::Ident && peek().text == word) {
            advance();
            return true;
        }
        return false;
    }

    void expect_word(const char* word) {
        if (!accept_word(word)) fail(peek(), std::string("expected '") + word + "'");
    }

    Statement statement() {
        const Token& head = peek();
        Statement out = [&]() -> Statement {
            if (head.kind == Tok::Ident && head.text == "prepare") return prepare();
            if (head.kind == Tok::Ident && head.text == "measure") return measurement();
            if (head.kind == Tok::Ident && head.text == "report") return report();
            fail(head, "expected 'prepare', 'measure' or 'report'");
        }();
        expect(Tok::Semi, "';'");
        return out;
    }

    PrepareStmt prepare() {
        PrepareStmt s;
        s.pos = peek().pos;
        expect_word("prepare");
        if (accept_word("singlet")) {
            s.source = PrepareStmt::Source::Singlet;
            s.labels = label_pair();
        } else if (accept_word("bell")) {
            s.source = PrepareStmt::Source::Bell;
            s.bell = bellkind();
            s.labels = label_pair();
        } else if (accept_word("ket")) {
            s.source = PrepareStmt::Source::Ket;
            s.ket_pattern = bitpattern();
        } else {
            fail(peek(), "expected 'singlet', 'bell' or 'ket'");
        }
        return s;
    }

    MeasureStmt measurement() {
        MeasureStmt s;
        s.pos = peek().pos;
        expect_word("measure");
        if (accept_word("spin")) {
            expect(Tok::LParen, "'('");
            s.axis = axis();
            expect(Tok::RParen, "')'");
        } else if (accept_word("bell")) {
            s.is_bell = true;
        } else {
            fail(peek(), "expected 'spin' or 'bell'");
        }
        expect_word("on");
        s.targets = targets();
        return s;
    }

    ReportStmt report() {
        ReportStmt s;
        s.pos = peek().pos;
        expect_word("report");
        s.metric = metric();
        return s;
    }

    MetricSpec metric() {
        MetricSpec m;
        if (accept_word("probs")) {
            m.kind = MetricSpec::Kind::Probs;
        } else if (accept_word("rdm")) {
            m.kind = MetricSpec::Kind::Rdm;
            expect(Tok::LParen, "'('");
            m.labels_a = label_list();
            expect(Tok::RParen, "')'");
        } else if (peek().kind == Tok::Ident &&
                   (peek().text == "schmidt" || peek().text == "entropy")) {
            m.kind = peek().text == "schmidt" ? MetricSpec::Kind::Schmidt
                                              : MetricSpec::Kind::Entropy;
            advance();
            expect(Tok::LParen, "'('");
            m.labels_a = label_list();
            expect(Tok::Pipe, "'|'");
            m.labels_b = label_list();
            expect(Tok::RParen, "')'");
        } else if (accept_word("concurrence")) {
            m.kind = MetricSpec::Kind::Concurrence;
            const std::vector<int> pair = label_pair();
            m.labels_a = pair;
        } else if (accept_word("correlator")) {
            m.kind = MetricSpec::Kind::Correlator;
            expect(Tok::LParen, "'('");
            m.labels_a = {label()};
            expect(Tok::Comma, "','");
            m.axis_a = axis();
            expect(Tok::Comma, "','");
            m.labels_b = {label()};
            expect(Tok::Comma, "','");
            m.axis_b = axis();
            expect(Tok::RParen, "')'");
        } else {
            fail(peek(), "expected a metric");
        }
        return m;
    }

    // -- shared pieces ---------------------------------------------------

    BellKind bellkind() {
        const Token& name = peek();
        std::string base;
        if (name.kind == Tok::Ident && (name.text == "psi" || name.text == "phi")) {
            base = name.text;
            advance();
        } else {
            fail(name, "expected 'psi+', 'psi-', 'phi+' or 'phi-'");
        }
        const Token& sign = peek();
        if (sign.kind != Tok::Plus && sign.kind != Tok::Minus)
            fail(sign, "expected '+' or '-' after '" + base + "'");
        advance();
        const bool plus = sign.kind == Tok::Plus;
        if (base == "psi") return plus ? BellKind::PsiPlus : BellKind::PsiMinus;
        return plus ? BellKind::PhiPlus : BellKind::PhiMinus;
    }

    std::vector<Spin> bitpattern() {
        std::vector<Spin> bits;
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            bits.push_back(peek().kind == Tok::Plus ? Spin::Plus : Spin::Minus);
            advance();
        }
        if (bits.empty()) fail(peek(), "expected a '+'/'-' pattern");
        return bits;
    }

    int label() {
        const Token& t = expect(Tok::Number, "a particle label");
        for (char c : t.text)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(t, "particle label must be a positive integer");
        errno = 0;
        const long v = std::strtol(t.text.c_str(), nullptr, 10);
        if (errno != 0 || v < 1 || v > 1'000'000) fail(t, "particle label out of range");
        return static_cast<int>(v);
    }

    std::vector<int> label_pair() {
        expect(Tok::LParen, "'('");
        std::vector<int> out = {label()};
        expect(Tok::Comma, "','");
        out.push_back(label());
        expect(Tok::RParen, "')'");
        return out;
    }

    std::vector<int> label_list() {
        std::vector<int> out = {label()};
        while (peek().kind == Tok::Comma) {
            advance();
            out.push_back(label());
        }
        return out;
    }

    std::vector<int> targets() {
        if (peek().kind == Tok::LParen) return label_pair();
        return {label()};
    }

    double signed_number() {
        double sign = 1.0;
        if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            if (peek().kind == Tok::Minus) sign = -1.0;
            advance();
        }
        const Token& t = expect(Tok::Number, "a number");
        errno = 0;
        const double v = std::strtod(t.text.c_str(), nullptr);
        if (errno != 0 || !std::isfinite(v)) fail(t, "number out of range");
        return sign * v;
    }

    AxisSpec axis() {
        AxisSpec a;
        if (accept_word("x")) {
            a.kind = AxisSpec::Kind::X;
        } else if (accept_word("y")) {
            a.kind = AxisSpec::Kind::Y;
        } else if (accept_word("z")) {
            a.kind = AxisSpec::Kind::Z;
        } else if (peek().kind == Tok::LParen) {
            advance();
            a.kind = AxisSpec::Kind::Custom;
            a.x = signed_number();
            expect(Tok::Comma, "','");
            a.y = signed_number();
            expect(Tok::Comma, "','");
            a.z = signed_number();
            expect(Tok::RParen, "')'");
        } else {
            fail(peek(), "expected an axis");
        }
        return a;
    }

    std::vector<Token> toks_;
    std::size_t at_ = 0;
};

}  // namespace

ParseResult parse(std::string_view source) {
    ParseResult result;
    try {
        Lexer lexer(source);
        Parser parser(lexer.run());
        result.program = parser.run();
    } catch (const ParseFail& f) {
        result.error = f.error;
    }
    return result;
}

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string axis_text(const AxisSpec& a) {
    switch (a.kind) {
        case AxisSpec::Kind::X: return "x";
        case AxisSpec::Kind::Y: return "y";
        case AxisSpec::Kind::Z: return "z";
        case AxisSpec::Kind::Custom:
            return "(" + fmt17(a.x) + "," + fmt17(a.y) + "," + fmt17(a.z) + ")";
    }
    return "?";
}

std::string join_labels(const std::vector<int>& labels) {
    std::string out;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(labels[i]);
    }
    return out;
}

const char* bell_word(BellKind k) {
    switch (k) {
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PsiMinus: return "psi-";
        case BellKind::PhiPlus: return "phi+";
        case BellKind::PhiMinus: return "phi-";
    }
    return "?";
}

}  // namespace

std::string pretty_print(const MetricSpec& m) {
    switch (m.kind) {
        case MetricSpec::Kind::Probs: return "probs";
        case MetricSpec::Kind::Rdm: return "rdm(" + join_labels(m.labels_a) + ")";
        case MetricSpec::Kind::Schmidt:
            return "schmidt(" + join_labels(m.labels_a) + "|" + join_labels(m.labels_b) + ")";
        case MetricSpec::Kind::Entropy:
            return "entropy(" + join_labels(m.labels_a) + "|" + join_labels(m.labels_b) + ")";
        case MetricSpec::Kind::Concurrence: return "concurrence(" + join_labels(m.labels_a) + ")";
        case MetricSpec::Kind::Correlator:
            return "correlator(" + std::to_string(m.labels_a[0]) + "," + axis_text(m.axis_a) +
                   "," + std::to_string(m.labels_b[0]) + "," + axis_text(m.axis_b) + ")";
    }
    return "?";
}

std::string pretty_print(const ProtocolProgram& program) {
    std::string out;
    for (const Statement& stmt : program.statements) {
        if (const auto* p = std::get_if<PrepareStmt>(&stmt)) {
            out += "prepare ";
            switch (p->source) {
                case PrepareStmt::Source::Singlet:
                    out += "singlet(" + join_labels(p->labels) + ")";
                    break;
                case PrepareStmt::Source::Bell:
                    out += std::string("bell ") + bell_word(p->bell) + "(" +
                           join_labels(p->labels) + ")";
                    break;
                case PrepareStmt::Source::Ket: {
                    out += "ket ";
                    for (Spin b : p->ket_pattern) out += (b == Spin::Plus ? '+' : '-');
                    break;
                }
            }
        } else if (const auto* m = std::get_if<MeasureStmt>(&stmt)) {
            out += "measure ";
            out += m->is_bell ? "bell" : ("spin(" + axis_text(m->axis) + ")");
            out += " on ";
            out += m->targets.size() == 1 ? std::to_string(m->targets[0])
                                          : "(" + join_labels(m->targets) + ")";
        } else {
            out += "report " + pretty_print(std::get<ReportStmt>(stmt).metric);
        }
        out += ";\n";
    }
    return out;
}

std::vector<SemanticError> validate(const ProtocolProgram& program) {
    std::vector<SemanticError> errors;
    std::set<int> declared;
    int highest = 0;

    auto require_declared = [&](const std::vector<int>& labels, const SourcePos& pos) {
        for (int lbl : labels)
            if (!declared.count(lbl))
                errors.push_back({pos, "undeclared particle " + std::to_string(lbl)});
    };
    auto check_axis = [&](const AxisSpec& a, const SourcePos& pos) {
        if (a.kind != AxisSpec::Kind::Custom) return;
        const double n = std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z);
        if (!(n >= 1e-6 && n <= 1e6))
            errors.push_back({pos, "axis vector norm out of range [1e-6, 1e6]"});
    };

    for (const Statement& stmt : program.statements) {
        if (const auto* p = std::get_if<PrepareStmt>(&stmt)) {
            std::vector<int> labels = p->labels;
            if (p->source == PrepareStmt::Source::Ket) {
                for (std::size_t i = 0; i < p->ket_pattern.size(); ++i)
                    labels.push_back(highest + 1 + static_cast<int>(i));
            }
            if (labels.size() == 2 && labels[0] == labels[1])
                errors.push_back({p->pos, "pair labels must be distinct"});
            for (int lbl : labels) {
                if (declared.count(lbl))
                    errors.push_back(
                        {p->pos, "particle " + std::to_string(lbl) + " prepared twice"});
                declared.insert(lbl);
                highest = std::max(highest, lbl);
            }
        } else if (const auto* m = std::get_if<MeasureStmt>(&stmt)) {
            require_declared(m->targets, m->pos);
            if (m->targets.size() == 2 && m->targets[0] == m->targets[1])
                errors.push_back({m->pos, "duplicate measurement target"});
            if (m->is_bell && m->targets.size() != 2)
                errors.push_back({m->pos, "bell measurement needs exactly 2 targets"});
            if (!m->is_bell) check_axis(m->axis, m->pos);
        } else {
            const auto& r = std::get<ReportStmt>(stmt);
            const MetricSpec& spec = r.metric;
            require_declared(spec.labels_a, r.pos);
            require_declared(spec.labels_b, r.pos);
            switch (spec.kind) {
                case MetricSpec::Kind::Schmidt:
                case MetricSpec::Kind::Entropy: {
                    std::set<int> a(spec.labels_a.begin(), spec.labels_a.end());
                    for (int lbl : spec.labels_b)
                        if (a.count(lbl))
                            errors.push_back({r.pos, "bipartition sides share particle " +
                                                         std::to_string(lbl)});
                    break;
                }
                case MetricSpec::Kind::Concurrence:
                    if (spec.labels_a.size() == 2 && spec.labels_a[0] == spec.labels_a[1])
                        errors.push_back({r.pos, "concurrence needs two distinct particles"});
                    break;
                case MetricSpec::Kind::Correlator:
                    if (spec.labels_a == spec.labels_b)
                        errors.push_back({r.pos, "correlator needs two distinct particles"});
                    break;
                default: break;
            }
        }
    }
    return errors;
}

}  // namespace qswap
