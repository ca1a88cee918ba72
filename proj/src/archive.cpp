#include "gkl/archive.hpp"

#include "gkl/error.hpp"

#include <zlib.h>

#include <fstream>

namespace gkl {

namespace {

constexpr std::uint32_t kLocalHeader = 0x04034b50;
constexpr std::uint32_t kCentralHeader = 0x02014b50;
constexpr std::uint32_t kEndOfCentral = 0x06054b50;

[[noreturn]] void corrupt(const std::string& what) { raise(ErrorKind::CorruptDataset, "zip archive: " + what); }

std::uint32_t read_u32(std::string_view b, std::size_t at) {
    if (at + 4 > b.size()) corrupt("truncated");
    return static_cast<std::uint32_t>(static_cast<unsigned char>(b[at])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(b[at + 3])) << 24;
}

std::uint16_t read_u16(std::string_view b, std::size_t at) {
    if (at + 2 > b.size()) corrupt("truncated");
    return static_cast<std::uint16_t>(static_cast<unsigned char>(b[at]) |
                                      static_cast<unsigned char>(b[at + 1]) << 8);
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

std::uint32_t crc_of(std::string_view data) {
    return static_cast<std::uint32_t>(
        crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

std::string inflate_raw(std::string_view compressed, std::size_t expected) {
    std::string out(expected, '\0');
    z_stream zs{};
    if (inflateInit2(&zs, -MAX_WBITS) != Z_OK) corrupt("inflate init failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    zs.avail_in = static_cast<uInt>(compressed.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = inflate(&zs, Z_FINISH);
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END || produced != expected) corrupt("deflate stream is damaged");
    return out;
}

std::string deflate_raw(std::string_view data) {
    z_stream zs{};
    if (deflateInit2(&zs, Z_DEFAULT_COMPRESSION, Z_DEFLATED, -MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        raise(ErrorKind::IoError, "deflate init failed");
    }
    std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) raise(ErrorKind::IoError, "deflate failed");
    return out;
}

}  // namespace

std::vector<ArchiveEntry> read_zip(std::string_view bytes) {
    if (bytes.size() < 22) corrupt("too short");
    std::size_t eocd = std::string_view::npos;
    const std::size_t lowest = bytes.size() > 22 + 0xffff ? bytes.size() - 22 - 0xffff : 0;
    for (std::size_t at = bytes.size() - 22 + 1; at-- > lowest;) {
        if (read_u32(bytes, at) == kEndOfCentral) {
            eocd = at;
            break;
        }
    }
    if (eocd == std::string_view::npos) corrupt("no end-of-central-directory record");
    const std::size_t count = read_u16(bytes, eocd + 10);
    std::size_t at = read_u32(bytes, eocd + 16);

    std::vector<ArchiveEntry> entries;
    for (std::size_t i = 0; i < count; ++i) {
        if (read_u32(bytes, at) != kCentralHeader) corrupt("bad central directory entry");
        const auto flags = read_u16(bytes, at + 8);
        const auto method = read_u16(bytes, at + 10);
        const auto crc = read_u32(bytes, at + 16);
        const std::size_t packed = read_u32(bytes, at + 20);
        const std::size_t size = read_u32(bytes, at + 24);
        const std::size_t name_len = read_u16(bytes, at + 28);
        const std::size_t extra_len = read_u16(bytes, at + 30);
        const std::size_t comment_len = read_u16(bytes, at + 32);
        const std::size_t local = read_u32(bytes, at + 42);
        if (at + 46 + name_len > bytes.size()) corrupt("truncated");
        std::string name(bytes.substr(at + 46, name_len));
        at += 46 + name_len + extra_len + comment_len;

        if (flags & 0x1) corrupt("encrypted entry " + name);
        if (packed == 0xffffffff || size == 0xffffffff) corrupt("zip64 entries are not supported");
        if (name.empty() || name.back() == '/') continue;
        if (read_u32(bytes, local) != kLocalHeader) corrupt("bad local header for " + name);
        const std::size_t data_at = local + 30 + read_u16(bytes, local + 26) + read_u16(bytes, local + 28);
        if (data_at + packed > bytes.size()) corrupt("truncated data for " + name);
        const auto payload = bytes.substr(data_at, packed);

        std::string data;
        if (method == 0) {
            data = std::string(payload);
        } else if (method == 8) {
            data = inflate_raw(payload, size);
        } else {
            corrupt("unsupported compression method " + std::to_string(method) + " for " + name);
        }
        if (crc_of(data) != crc) corrupt("CRC mismatch for " + name);
        entries.push_back({std::move(name), std::move(data)});
    }
    return entries;
}

std::string write_zip(const std::vector<ArchiveEntry>& entries) {
    std::string out;
    std::string central;
    for (const auto& e : entries) {
        const auto packed = deflate_raw(e.data);
        const auto crc = crc_of(e.data);
        const auto offset = static_cast<std::uint32_t>(out.size());

        put_u32(out, kLocalHeader);
        put_u16(out, 20);  // version needed
        put_u16(out, 0);   // flags
        put_u16(out, 8);   // deflate
        put_u16(out, 0);   // time
        put_u16(out, 0x21);  // date 1980-01-01
        put_u32(out, crc);
        put_u32(out, static_cast<std::uint32_t>(packed.size()));
        put_u32(out, static_cast<std::uint32_t>(e.data.size()));
        put_u16(out, static_cast<std::uint16_t>(e.name.size()));
        put_u16(out, 0);
        out += e.name;
        out += packed;

        put_u32(central, kCentralHeader);
        put_u16(central, 20);
        put_u16(central, 20);
        put_u16(central, 0);
        put_u16(central, 8);
        put_u16(central, 0);
        put_u16(central, 0x21);
        put_u32(central, crc);
        put_u32(central, static_cast<std::uint32_t>(packed.size()));
        put_u32(central, static_cast<std::uint32_t>(e.data.size()));
        put_u16(central, static_cast<std::uint16_t>(e.name.size()));
        put_u16(central, 0);
        put_u16(central, 0);
        put_u16(central, 0);
        put_u16(central, 0);
        put_u32(central, 0);
        put_u32(central, offset);
        central += e.name;
    }
    const auto central_at = static_cast<std::uint32_t>(out.size());
    out += central;
    put_u32(out, kEndOfCentral);
    put_u16(out, 0);
    put_u16(out, 0);
    put_u16(out, static_cast<std::uint16_t>(entries.size()));
    put_u16(out, static_cast<std::uint16_t>(entries.size()));
    put_u32(out, static_cast<std::uint32_t>(central.size()));
    put_u32(out, central_at);
    put_u16(out, 0);
    return out;
}

std::vector<std::string> extract_zip_flat(std::string_view bytes, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> written;
    for (const auto& e : read_zip(bytes)) {
        const auto base = std::filesystem::path(e.name).filename().string();
        if (base.empty() || base == "." || base == "..") continue;
        std::ofstream out(dir / base, std::ios::binary);
        out.write(e.data.data(), static_cast<std::streamsize>(e.data.size()));
        if (!out) raise(ErrorKind::IoError, "cannot write " + (dir / base).string());
        written.push_back(base);
    }
    return written;
}

}  // namespace gkl
