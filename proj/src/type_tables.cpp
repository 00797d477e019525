#include "failscen/type_tables.hpp"

#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace failscen::model {

namespace {

const std::unordered_map<std::string, std::string>& wrappers() {
    static const std::unordered_map<std::string, std::string> kMap{
        {"boolean", "Boolean"}, {"byte", "Byte"},     {"char", "Character"},
        {"short", "Short"},     {"int", "Integer"},   {"long", "Long"},
        {"float", "Float"},     {"double", "Double"}, {"void", "Void"},
    };
    return kMap;
}

const std::unordered_set<std::string>& collectionNames() {
    static const std::unordered_set<std::string> kSet{
        "Collection", "Iterable",
        // lists
        "List", "ArrayList", "LinkedList", "Vector", "Stack", "AbstractList",
        "CopyOnWriteArrayList",
        // sets
        "Set", "HashSet", "LinkedHashSet", "TreeSet", "SortedSet", "NavigableSet",
        "EnumSet", "AbstractSet", "CopyOnWriteArraySet", "ConcurrentSkipListSet",
        // maps
        "Map", "HashMap", "LinkedHashMap", "TreeMap", "SortedMap", "NavigableMap",
        "Hashtable", "WeakHashMap", "IdentityHashMap", "EnumMap", "AbstractMap",
        "ConcurrentMap", "ConcurrentHashMap", "ConcurrentNavigableMap",
        "ConcurrentSkipListMap",
        // queues and deques
        "Queue", "Deque", "ArrayDeque", "PriorityQueue", "AbstractQueue",
        "BlockingQueue", "BlockingDeque", "LinkedBlockingQueue",
        "LinkedBlockingDeque", "ArrayBlockingQueue", "SynchronousQueue",
        "DelayQueue", "PriorityBlockingQueue", "ConcurrentLinkedQueue",
        "ConcurrentLinkedDeque", "LinkedTransferQueue",
    };
    return kSet;
}

const std::unordered_set<std::string>& platformNames() {
    static const std::unordered_set<std::string> kSet{
        // java.lang
        "Object", "String", "CharSequence", "StringBuilder", "StringBuffer",
        "Integer", "Long", "Short", "Byte", "Double", "Float", "Character",
        "Boolean", "Number", "Void", "Math", "StrictMath", "System", "Thread",
        "Runnable", "Runtime", "Process", "ProcessBuilder", "Class",
        "ClassLoader", "Comparable", "Cloneable", "AutoCloseable", "Enum",
        "Throwable", "Exception", "RuntimeException", "Error",
        "StackTraceElement", "ThreadLocal", "ThreadGroup",
        // common exceptions
        "NullPointerException", "IllegalArgumentException",
        "IllegalStateException", "IndexOutOfBoundsException",
        "ArrayIndexOutOfBoundsException", "StringIndexOutOfBoundsException",
        "ClassCastException", "ConcurrentModificationException",
        "UnsupportedOperationException", "ArithmeticException",
        "NumberFormatException", "NoSuchElementException",
        "InterruptedException", "CloneNotSupportedException",
        "NegativeArraySizeException", "ArrayStoreException",
        "EmptyStackException", "RejectedExecutionException",
        "SecurityException", "IllegalMonitorStateException",
        "MissingResourceException", "BufferOverflowException",
        "BufferUnderflowException", "CMMException", "IOException",
        "FileNotFoundException", "UncheckedIOException", "ParseException",
        // java.util beyond collections
        "Iterator", "ListIterator", "Enumeration", "Comparator", "Optional",
        "OptionalInt", "OptionalLong", "OptionalDouble", "Scanner", "Random",
        "Date", "Calendar", "GregorianCalendar", "TimeZone", "Locale", "UUID",
        "Objects", "Arrays", "Collections", "StringTokenizer", "Timer",
        "TimerTask", "Properties", "BitSet", "Observable", "Observer",
        "StringJoiner", "Spliterator", "ResourceBundle",
        // java.util.function / stream
        "Function", "BiFunction", "Supplier", "Consumer", "BiConsumer",
        "Predicate", "BiPredicate", "UnaryOperator", "BinaryOperator", "Stream",
        "IntStream", "LongStream", "DoubleStream", "Collectors",
        // java.util.regex
        "Pattern", "Matcher",
        // java.io / java.nio
        "File", "InputStream", "OutputStream", "FileInputStream",
        "FileOutputStream", "InputStreamReader", "OutputStreamWriter",
        "BufferedReader", "BufferedWriter", "Reader", "Writer", "FileReader",
        "FileWriter", "PrintStream", "PrintWriter", "ObjectInputStream",
        "ObjectOutputStream", "DataInputStream", "DataOutputStream",
        "ByteArrayInputStream", "ByteArrayOutputStream", "RandomAccessFile",
        "Serializable", "Closeable", "Flushable", "Path", "Paths", "Files",
        "ByteBuffer", "CharBuffer", "IntBuffer", "LongBuffer", "DoubleBuffer",
        "Buffer", "Charset", "StandardCharsets", "FileChannel",
        // java.util.concurrent
        "Executor", "ExecutorService", "Executors", "ScheduledExecutorService",
        "ThreadPoolExecutor", "Future", "CompletableFuture", "Callable",
        "CountDownLatch", "Semaphore", "CyclicBarrier", "Exchanger", "TimeUnit",
        "AtomicInteger", "AtomicLong", "AtomicBoolean", "AtomicReference",
        "ReentrantLock", "ReentrantReadWriteLock", "Lock", "ReadWriteLock",
        "Condition", "ThreadLocalRandom", "ForkJoinPool", "ForkJoinTask",
        // java.text
        "DateFormat", "SimpleDateFormat", "NumberFormat", "DecimalFormat",
        "MessageFormat", "Format", "ChoiceFormat", "Normalizer",
        // java.math
        "BigDecimal", "BigInteger", "MathContext", "RoundingMode",
        // java.net
        "URL", "URI", "URLConnection", "HttpURLConnection", "Socket",
        "ServerSocket", "InetAddress", "InetSocketAddress", "DatagramSocket",
        "DatagramPacket", "URLEncoder", "URLDecoder", "MalformedURLException",
        "UnknownHostException", "SocketException", "SocketTimeoutException",
    };
    return kSet;
}

// Package roots whose classes keep their simple names. A qualified name
// rooted anywhere else is application code regardless of its simple name.
bool platformRoot(const std::string& root) {
    return root == "java" || root == "javax";
}

}  // namespace

bool isKnownClassName(const std::string& name) {
    return collectionNames().count(name) > 0 || platformNames().count(name) > 0;
}

std::string abstractType(const std::string& raw) {
    if (raw.empty()) return raw;

    // Peel array suffixes.
    std::string base = raw;
    std::string suffix;
    while (base.size() >= 2 && base.compare(base.size() - 2, 2, "[]") == 0) {
        base.resize(base.size() - 2);
        suffix += "[]";
    }
    if (base.empty()) return "appClass" + suffix;

    std::string simple = base;
    if (auto dot = base.rfind('.'); dot != std::string::npos) {
        const std::string root = base.substr(0, base.find('.'));
        simple = base.substr(dot + 1);
        // A lowercase package root outside the JDK pins the type as
        // application code even if the last segment looks familiar.
        if (!root.empty() && std::islower(static_cast<unsigned char>(root[0])) &&
            !platformRoot(root))
            return "appClass" + suffix;
    }

    if (auto it = wrappers().find(simple); it != wrappers().end())
        return it->second + suffix;
    if (collectionNames().count(simple)) return "Collection" + suffix;
    if (platformNames().count(simple)) return simple + suffix;
    return "appClass" + suffix;
}

}  // namespace failscen::model
