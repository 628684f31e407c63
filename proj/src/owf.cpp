#include "hashpebble/owf.hpp"

#include <array>
#include <cstring>

#include <openssl/evp.h>

#include "hashpebble/errors.hpp"

namespace hashpebble {

namespace {

int hex_digit(char ch)
{
    if (ch >= '0' && ch <= '9')
        return ch - '0';
    if (ch >= 'a' && ch <= 'f')
        return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F')
        return ch - 'A' + 10;
    return -1;
}

void md5_kernel(std::span<const std::uint8_t> in, std::span<std::uint8_t> out)
{
    unsigned int len = 0;
    if (EVP_Digest(in.data(), in.size(), out.data(), &len, EVP_md5(), nullptr) != 1 || len != out.size())
        throw std::runtime_error("EVP_Digest(md5) failed");
}

// f(x) = AES_x(0^128): the input is used as the key, the block is fixed.
void aes_zero_block_kernel(std::span<const std::uint8_t> in, std::span<std::uint8_t> out)
{
    using CtxPtr = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;
    CtxPtr ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
    static constexpr std::array<std::uint8_t, 16> zero_block{};
    int len = 0;
    if (!ctx
        || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_ecb(), nullptr, in.data(), nullptr) != 1
        || EVP_CIPHER_CTX_set_padding(ctx.get(), 0) != 1
        || EVP_EncryptUpdate(ctx.get(), out.data(), &len, zero_block.data(), zero_block.size()) != 1
        || len != 16)
        throw std::runtime_error("AES-128 encryption failed");
}

// splitmix64 output function: an invertible mix of a 64-bit word.
std::uint64_t mix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void testmix_kernel(std::span<const std::uint8_t> in, std::span<std::uint8_t> out)
{
    std::uint64_t word = 0;
    for (auto b : in)
        word = (word << 8) | b;
    word = mix64(word);
    for (std::size_t i = 8; i-- > 0;) {
        out[i] = static_cast<std::uint8_t>(word);
        word >>= 8;
    }
}

}  // namespace

Value Value::from_hex(std::string_view hex)
{
    if (hex.size() % 2 != 0)
        throw InvalidInput("hex string has odd length");
    std::vector<std::uint8_t> bytes(hex.size() / 2);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        int hi = hex_digit(hex[2 * i]);
        int lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0)
            throw InvalidInput("invalid hex character");
        bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return Value(std::move(bytes));
}

std::string Value::hex() const
{
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * bytes_.size());
    for (auto b : bytes_) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

Owf::Owf(std::string name, std::size_t width, Kernel kernel)
    : impl_(std::make_shared<const Impl>(Impl{std::move(name), width, std::move(kernel)}))
{
}

Value Owf::operator()(const Value& v) const
{
    if (v.size() != impl_->width)
        throw InvalidInput("value width " + std::to_string(v.size()) + " does not match " + impl_->name
                           + " width " + std::to_string(impl_->width));
    Value out = Value::zeros(impl_->width);
    impl_->kernel(v.bytes(), out.bytes());
    return out;
}

Value evaluate(const Owf& owf, const Value& v)
{
    return owf(v);
}

Value iterate(const Owf& owf, Value v, std::uint64_t m)
{
    if (v.size() != owf.width())
        throw InvalidInput("value width does not match " + owf.name());
    for (std::uint64_t i = 0; i < m; ++i)
        v = owf(v);
    return v;
}

Owf builtin(std::string_view name)
{
    if (name == "md5")
        return Owf("md5", 16, md5_kernel);
    if (name == "davies-meyer-aes128")
        return Owf("davies-meyer-aes128", 16, aes_zero_block_kernel);
    if (name == "testmix64")
        return Owf("testmix64", 8, testmix_kernel);
    throw ConfigError("unknown one-way function: " + std::string(name));
}

std::vector<std::string_view> builtin_names()
{
    return {"md5", "davies-meyer-aes128", "testmix64"};
}

Value default_seed(const Owf& owf)
{
    if (owf.name() == "md5") {
        Value out = Value::zeros(16);
        md5_kernel({}, out.bytes());
        return out;
    }
    return owf(Value::zeros(owf.width()));
}

}  // namespace hashpebble
